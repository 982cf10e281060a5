#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "vtnav/core/so3.hpp"

namespace vtnav {

namespace constants {
inline constexpr double kMuEarth = 3.986004418e14;  // m^3/s^2
inline constexpr double kEarthRadius = 6.378e6;     // m
}  // namespace constants

// Relative state of the inspector in the Hill frame
// (x radial, y along-track, z cross-track).
struct HillState {
  Vec3 position = Vec3::Zero();  // m
  Vec3 velocity = Vec3::Zero();  // m/s
};

// Integration constants of the closed-ellipse relative orbit.
// x_off = 0 gives the bounded family; a nonzero radial offset adds the
// secular along-track drift used by the flyby trajectory.
struct BoundedOrbitParams {
  double A0 = 0.0;          // in-plane amplitude, m
  double alpha = 0.0;       // in-plane phase, rad
  double B0 = 0.0;          // cross-track amplitude, m
  double beta_phase = 0.0;  // cross-track phase, rad
  double y_off = 0.0;       // along-track offset, m
  double n = 0.0;           // mean motion, rad/s
  double x_off = 0.0;       // radial offset (drift term), m

  void validate() const {
    if (A0 < 0 || B0 < 0) throw std::invalid_argument("orbit amplitudes must be >= 0");
    if (!(n > 0)) throw std::invalid_argument("mean motion must be > 0");
  }
};

struct OrbitGeometry {
  double semi_major_axis = 6.778e6;           // m
  double earth_radius = constants::kEarthRadius;
  double mu = constants::kMuEarth;
  double inclination = 51.6 * M_PI / 180.0;   // rad
  Vec3 sun_direction = Vec3(1, 0, 0);         // inertial, unit

  double altitude() const { return semi_major_axis - earth_radius; }
};

inline double mean_motion(double a, double mu) {
  if (!(a > 0) || !(mu > 0)) throw std::invalid_argument("mean_motion: a and mu must be > 0");
  return std::sqrt(mu / (a * a * a));
}

inline HillState hcw_closed_form(double t, const BoundedOrbitParams& p) {
  const double u = p.n * t + p.alpha;
  const double w = p.n * t + p.beta_phase;
  HillState s;
  s.position.x() = p.x_off + p.A0 * std::cos(u);
  s.position.y() = p.y_off - 1.5 * p.n * p.x_off * t - 2.0 * p.A0 * std::sin(u);
  s.position.z() = p.B0 * std::cos(w);
  s.velocity.x() = -p.A0 * p.n * std::sin(u);
  s.velocity.y() = -1.5 * p.n * p.x_off - 2.0 * p.A0 * p.n * std::cos(u);
  s.velocity.z() = -p.B0 * p.n * std::sin(w);
  return s;
}

// analytic acceleration of the closed-form solution
inline Vec3 hcw_closed_form_accel(double t, const BoundedOrbitParams& p) {
  const double u = p.n * t + p.alpha;
  const double w = p.n * t + p.beta_phase;
  return Vec3(-p.A0 * p.n * p.n * std::cos(u),
              2.0 * p.A0 * p.n * p.n * std::sin(u),
              -p.B0 * p.n * p.n * std::cos(w));
}

using Vec6 = Eigen::Matrix<double, 6, 1>;

inline Vec6 hcw_ode_rhs(const HillState& s, double n) {
  Vec6 d;
  d.head<3>() = s.velocity;
  d(3) = 2.0 * n * s.velocity.y() + 3.0 * n * n * s.position.x();
  d(4) = -2.0 * n * s.velocity.x();
  d(5) = -n * n * s.position.z();
  return d;
}

// classic fixed-step RK4 on the relative-motion ODE
inline std::vector<HillState> propagate_numeric(const HillState& s0, double n,
                                                double dt, double duration) {
  if (!(dt > 0) || duration < dt)
    throw std::invalid_argument("propagate_numeric: dt > 0 and duration >= dt required");
  const int steps = static_cast<int>(std::floor(duration / dt));
  std::vector<HillState> out;
  out.reserve(steps + 1);
  out.push_back(s0);
  Vec6 x;
  x << s0.position, s0.velocity;
  auto f = [n](const Vec6& v) {
    HillState h;
    h.position = v.head<3>();
    h.velocity = v.tail<3>();
    return hcw_ode_rhs(h, n);
  };
  for (int i = 0; i < steps; ++i) {
    const Vec6 k1 = f(x);
    const Vec6 k2 = f(x + 0.5 * dt * k1);
    const Vec6 k3 = f(x + 0.5 * dt * k2);
    const Vec6 k4 = f(x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    HillState h;
    h.position = x.head<3>();
    h.velocity = x.tail<3>();
    out.push_back(h);
  }
  return out;
}

inline void check_unit(const Vec3& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-6)
    throw std::invalid_argument(std::string(what) + " must be a unit vector");
}

inline double beta_angle(const Vec3& sun_dir, const Vec3& orbit_normal) {
  check_unit(sun_dir, "sun_dir");
  check_unit(orbit_normal, "orbit_normal");
  const double s = std::min(1.0, std::abs(sun_dir.dot(orbit_normal)));
  return std::asin(s);
}

// cylindrical umbra: behind Earth along the sun line and inside the
// shadow-cylinder radius
inline bool in_eclipse(const Vec3& target_pos_inertial, const Vec3& sun_dir,
                       double earth_radius) {
  if (target_pos_inertial.norm() <= earth_radius)
    throw std::invalid_argument("in_eclipse: position inside Earth");
  const double along = target_pos_inertial.dot(sun_dir);
  if (along >= 0) return false;
  const Vec3 perp = target_pos_inertial - along * sun_dir;
  return perp.norm() < earth_radius;
}

inline double eclipse_fraction(double beta, double altitude, double earth_radius) {
  if (beta < 0 || beta > M_PI / 2 + 1e-12)
    throw std::invalid_argument("eclipse_fraction: beta out of [0, pi/2]");
  if (!(altitude > 0)) throw std::invalid_argument("eclipse_fraction: altitude must be > 0");
  const double h = altitude, R = earth_radius;
  const double cb = std::cos(beta);
  if (cb <= 0) return 0.0;
  const double arg = std::sqrt(h * h + 2.0 * R * h) / ((R + h) * cb);
  if (arg > 1.0) return 0.0;
  return std::acos(arg) / M_PI;
}

// Camera attitude: boresight (camera +z) toward the target origin, image
// vertical aligned with the projection of target_up.  Camera axes are
// x right, y down, z forward; image "up" is -y.
inline Mat3 inspector_attitude(const Vec3& rel_pos, const Vec3& target_up,
                               const Vec3* previous_image_up = nullptr) {
  const double r = rel_pos.norm();
  if (!(r > 0)) throw std::invalid_argument("inspector_attitude: zero relative position");
  const Vec3 boresight = -rel_pos / r;
  Vec3 up = target_up - target_up.dot(boresight) * boresight;
  if (up.norm() < 1e-9) {
    if (previous_image_up != nullptr) {
      up = *previous_image_up - previous_image_up->dot(boresight) * boresight;
    }
    if (up.norm() < 1e-9) {
      // first frame fallback: any axis not parallel to the boresight
      Vec3 alt = std::abs(boresight.x()) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
      up = alt - alt.dot(boresight) * boresight;
    }
  }
  up.normalize();
  const Vec3 y_cam = -up;                    // image up = -y
  const Vec3 x_cam = y_cam.cross(boresight);
  Mat3 R;
  R.col(0) = x_cam;
  R.col(1) = y_cam;
  R.col(2) = boresight;
  return R;
}

}  // namespace vtnav
