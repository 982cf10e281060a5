#pragma once

#include <string>
#include <vector>

#include "vtnav/core/csv.hpp"
#include "vtnav/relorbit/orbit.hpp"

namespace vtnav {

// One of the six standard inspection cases.
struct ScenarioSpec {
  int id = 1;
  std::string name;
  OrbitGeometry geometry;
  BoundedOrbitParams orbit;
  double spin_rate = 0.0;       // target spin about the inertial z axis, rad/s
  bool force_lit_vis = false;   // scenario 2: no eclipse in the visible band
  bool headlight_vis = false;   // scenario 2: illuminate from the inspector
  bool narrow_cameras = false;  // scenario 5: long-range camera set
  double duration_periods = 3.0;

  double period() const { return 2.0 * M_PI / orbit.n; }
  double duration() const { return duration_periods * period(); }

  // Orbit constants are fixtures: the trajectory envelopes (15 m ring,
  // 15-25 m oscillation, 50 m ring, 12-38 m flyby) pin them, and tests
  // check the resulting ranges.
  static ScenarioSpec standard(int id) {
    if (id < 1 || id > 6) throw std::invalid_argument("scenario id must be 1..6");
    ScenarioSpec s;
    s.id = id;
    s.geometry = OrbitGeometry{};
    const double n = mean_motion(s.geometry.semi_major_axis, s.geometry.mu);
    s.orbit.n = n;
    const double kRing = std::sqrt(3.0);  // B0/A0 of a constant-range relative orbit
    switch (id) {
      case 1:
        s.name = "15m_range";
        s.orbit.A0 = 7.5;
        s.orbit.B0 = 7.5 * kRing;
        break;
      case 2:
        s.name = "15m_fully_lit";
        s.orbit.A0 = 7.5;
        s.orbit.B0 = 7.5 * kRing;
        s.force_lit_vis = true;
        s.headlight_vis = true;
        break;
      case 3:
        s.name = "15m_rotating_target";
        s.orbit.A0 = 7.5;
        s.orbit.B0 = 7.5 * kRing;
        s.spin_rate = 5e-4;
        break;
      case 4:
        s.name = "15_25m_range";
        s.orbit.A0 = 12.5;
        s.orbit.B0 = 12.5 * std::sqrt(0.44);  // range oscillates 15..25 m
        break;
      case 5:
        s.name = "50m_range";
        s.orbit.A0 = 25.0;
        s.orbit.B0 = 25.0 * kRing;
        s.narrow_cameras = true;
        break;
      case 6:
        s.name = "flyby";
        s.orbit.A0 = 8.4;
        s.orbit.B0 = 13.25;
        s.orbit.x_off = 2.4;
        // center the along-track drift so the close pass happens mid-run
        s.orbit.y_off = 1.5 * n * s.orbit.x_off * (1.5 * 2.0 * M_PI / n);
        break;
    }
    s.orbit.validate();
    return s;
  }
};

// Closed-form evaluators for every ground-truth quantity at arbitrary time.
// All rotations returned as inertial->body or camera->body per the name.
class ContinuousScenario {
 public:
  explicit ContinuousScenario(const ScenarioSpec& spec) : spec_(spec) {
    const double i = spec.geometry.inclination;
    p_hat_ = Vec3(1, 0, 0);
    q_hat_ = Vec3(0, std::cos(i), std::sin(i));
    normal_ = p_hat_.cross(q_hat_);
    sun_ = spec.geometry.sun_direction.normalized();
  }

  const ScenarioSpec& spec() const { return spec_; }
  Vec3 orbit_normal() const { return normal_; }

  HillState hill_at(double t) const { return hcw_closed_form(t, spec_.orbit); }

  Vec3 target_pos_inertial(double t) const {
    const double th = spec_.orbit.n * t;
    return spec_.geometry.semi_major_axis * (p_hat_ * std::cos(th) + q_hat_ * std::sin(th));
  }

  Mat3 hill_to_inertial(double t) const {
    const Vec3 x = target_pos_inertial(t).normalized();
    const Vec3 z = normal_;
    const Vec3 y = z.cross(x);
    Mat3 R;
    R.col(0) = x;
    R.col(1) = y;
    R.col(2) = z;
    return R;
  }

  Mat3 target_attitude_at(double t) const {  // inertial -> body
    if (spec_.spin_rate == 0.0) return Mat3::Identity();
    return rot_z(spec_.spin_rate * t).transpose();
  }

  bool geometric_eclipse(double t) const {
    return in_eclipse(target_pos_inertial(t), sun_, spec_.geometry.earth_radius);
  }

  Vec3 inspector_pos_body(double t) const {
    return target_attitude_at(t) * (hill_to_inertial(t) * hill_at(t).position);
  }

  Mat3 inspector_rot_body(double t) const {  // camera -> body
    return inspector_attitude(inspector_pos_body(t), Vec3(0, 0, 1));
  }

  Pose inspector_pose_body(double t) const {
    return Pose(inspector_rot_body(t), inspector_pos_body(t));
  }

  Vec3 sun_body_geometric(double t) const { return target_attitude_at(t) * sun_; }

  // direction used to light the visible band (headlight in scenario 2)
  Vec3 sun_body_vis(double t) const {
    if (spec_.headlight_vis) return inspector_pos_body(t).normalized();
    return sun_body_geometric(t);
  }

  Vec3 nadir_body(double t) const {
    return target_attitude_at(t) * (-target_pos_inertial(t).normalized());
  }

  // subsolar cosine scaling of the Earth-albedo fill light
  double albedo_illum(double t) const {
    if (geometric_eclipse(t)) return 0.0;
    return std::max(0.0, sun_.dot(target_pos_inertial(t).normalized()));
  }

  bool vis_eclipse(double t) const {
    if (spec_.force_lit_vis) return false;
    return geometric_eclipse(t);
  }

 private:
  ScenarioSpec spec_;
  Vec3 p_hat_, q_hat_, normal_, sun_;
};

// Time-indexed ground truth sampled on the uniform master grid.
struct ScenarioTimeline {
  double dt = 0.1;          // master grid step (measurement rate)
  int camera_stride = 100;  // every Nth master sample is a camera frame
  std::vector<double> timestamps;
  std::vector<Pose> inspector_pose_gt;  // camera -> target body frame
  std::vector<HillState> hill_states;
  std::vector<std::uint8_t> eclipse_flags;    // gates the visible band
  std::vector<std::uint8_t> thermal_eclipse;  // geometric shadow, drives heating
  std::vector<Vec3> sun_dir_target_frame;     // lighting direction (body frame)
  std::vector<Vec3> sun_dir_thermal;          // geometric sun (body frame)
  std::vector<Vec3> nadir_dir_target_frame;
  std::vector<double> albedo_illum;
  std::vector<Mat3> target_attitude;  // inertial -> body

  size_t size() const { return timestamps.size(); }
  bool is_camera_sample(size_t i) const { return i % camera_stride == 0; }

  std::vector<size_t> camera_samples() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < size(); i += camera_stride) out.push_back(i);
    return out;
  }
};

struct GenerateConfig {
  double dt = 0.1;
  int camera_stride = 100;
};

inline ScenarioTimeline generate_scenario(int id, const GenerateConfig& cfg = {}) {
  const ScenarioSpec spec = ScenarioSpec::standard(id);
  const ContinuousScenario sc(spec);
  ScenarioTimeline tl;
  tl.dt = cfg.dt;
  tl.camera_stride = cfg.camera_stride;
  const size_t n = static_cast<size_t>(std::floor(spec.duration() / cfg.dt)) + 1;
  tl.timestamps.reserve(n);
  Vec3 prev_up(0, 0, 1);
  for (size_t i = 0; i < n; ++i) {
    const double t = i * cfg.dt;
    tl.timestamps.push_back(t);
    tl.hill_states.push_back(sc.hill_at(t));
    const Vec3 pos_body = sc.inspector_pos_body(t);
    const Mat3 rot = inspector_attitude(pos_body, Vec3(0, 0, 1), &prev_up);
    prev_up = -rot.col(1);
    tl.inspector_pose_gt.emplace_back(rot, pos_body);
    tl.eclipse_flags.push_back(sc.vis_eclipse(t) ? 1 : 0);
    tl.thermal_eclipse.push_back(sc.geometric_eclipse(t) ? 1 : 0);
    tl.sun_dir_target_frame.push_back(sc.sun_body_vis(t));
    tl.sun_dir_thermal.push_back(sc.sun_body_geometric(t));
    tl.nadir_dir_target_frame.push_back(sc.nadir_body(t));
    tl.albedo_illum.push_back(sc.albedo_illum(t));
    tl.target_attitude.push_back(sc.target_attitude_at(t));
  }
  return tl;
}

inline void write_timeline_csv(const ScenarioTimeline& tl, const std::string& path) {
  CsvWriter w(path);
  w.row({"t", "px", "py", "pz", "qw", "qx", "qy", "qz", "eclipse"});
  for (size_t i = 0; i < tl.size(); ++i) {
    const auto q = pose_quat(tl.inspector_pose_gt[i]);
    const Vec3& p = tl.inspector_pose_gt[i].t;
    w.row({fmt_double(tl.timestamps[i]), fmt_double(p.x()), fmt_double(p.y()),
           fmt_double(p.z()), fmt_double(q.w()), fmt_double(q.x()), fmt_double(q.y()),
           fmt_double(q.z()), tl.eclipse_flags[i] ? "1" : "0"});
  }
}

}  // namespace vtnav
