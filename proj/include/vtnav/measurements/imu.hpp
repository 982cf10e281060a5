#pragma once

#include <string>
#include <vector>

#include "vtnav/core/csv.hpp"
#include "vtnav/core/rng.hpp"
#include "vtnav/core/so3.hpp"
#include "vtnav/relorbit/scenario.hpp"

namespace vtnav {

// Relative-motion measurement at one master-grid sample.  Angular velocity
// and translational acceleration are of the inspector with respect to the
// target body frame, expressed in the inspector (camera) frame.
struct ImuSample {
  double t = 0.0;
  Vec3 rel_acc = Vec3::Zero();   // m/s^2
  Vec3 rel_gyro = Vec3::Zero();  // rad/s
};

struct ImuErrorParams {
  double gyro_noise_density = 1e-6;     // rad/s/sqrt(Hz)
  double gyro_bias_instability = 1e-6;  // rad/s
  double gyro_random_walk = 1e-6;       // rad/s*sqrt(Hz)
  double acc_bias_instability = 1e-5;   // m/s^2
  double acc_noise_density = 0.0;       // m/s^2/sqrt(Hz)
  double acc_random_walk = 0.0;         // m/s^2*sqrt(Hz)
  // bias correlation times; the accelerometer one is sized so the
  // double-integrated error over 24 h stays in the hundreds of meters
  double tau_gyro_bias_s = 3600.0;
  double tau_acc_bias_s = 1.0;

  void validate() const {
    for (double v : {gyro_noise_density, gyro_bias_instability, gyro_random_walk,
                     acc_bias_instability, acc_noise_density, acc_random_walk})
      if (v < 0) throw std::invalid_argument("imu params must be >= 0");
  }

  static ImuErrorParams zero() {
    ImuErrorParams p;
    p.gyro_noise_density = p.gyro_bias_instability = p.gyro_random_walk = 0.0;
    p.acc_bias_instability = 0.0;
    return p;
  }
};

// First-order Gauss-Markov sequence with stationary sigma, stationary init.
class GaussMarkov {
 public:
  GaussMarkov(double sigma, double tau, double dt, Rng& rng)
      : sigma_(sigma), phi_(std::exp(-dt / tau)), rng_(&rng) {
    value_ = sigma > 0 ? rng.gaussian(0.0, sigma) : 0.0;
    drive_ = sigma * std::sqrt(std::max(0.0, 1.0 - phi_ * phi_));
  }

  double step() {
    const double out = value_;
    value_ = phi_ * value_ + (sigma_ > 0 ? rng_->gaussian(0.0, drive_) : 0.0);
    return out;
  }

 private:
  double sigma_, phi_, value_, drive_;
  Rng* rng_;
};

// Ground truth comes from finite differences of the sampled trajectory:
// forward rotation increments for the gyro, central second differences for
// the acceleration.  With all error parameters zero the output equals this
// truth exactly.
inline std::vector<ImuSample> simulate_measurements(const ScenarioTimeline& tl,
                                                    const ImuErrorParams& params,
                                                    std::uint64_t seed) {
  params.validate();
  const size_t n = tl.size();
  if (n < 3) throw std::invalid_argument("simulate_measurements: timeline too short");
  const double dt = tl.dt;
  const double rate = 1.0 / dt;

  std::vector<ImuSample> out(n);
  for (size_t k = 0; k < n; ++k) {
    const Pose& cur = tl.inspector_pose_gt[k];
    const size_t kf = std::min(k, n - 2);  // forward pair, reused at the end
    const Mat3& Ra = tl.inspector_pose_gt[kf].R;
    const Mat3& Rb = tl.inspector_pose_gt[kf + 1].R;
    const Vec3 omega_body = so3_log(Ra.transpose() * Rb) / dt;

    const size_t kc = std::clamp<size_t>(k, 1, n - 2);  // centered triple
    const Vec3& p0 = tl.inspector_pose_gt[kc - 1].t;
    const Vec3& p1 = tl.inspector_pose_gt[kc].t;
    const Vec3& p2 = tl.inspector_pose_gt[kc + 1].t;
    const Vec3 acc_world = (p0 - 2.0 * p1 + p2) / (dt * dt);

    out[k].t = tl.timestamps[k];
    out[k].rel_gyro = omega_body;
    out[k].rel_acc = cur.R.transpose() * acc_world;
  }

  Rng rng(seed, seed_stream::kImu);
  GaussMarkov gyro_bias_x(params.gyro_bias_instability, params.tau_gyro_bias_s, dt, rng);
  GaussMarkov gyro_bias_y(params.gyro_bias_instability, params.tau_gyro_bias_s, dt, rng);
  GaussMarkov gyro_bias_z(params.gyro_bias_instability, params.tau_gyro_bias_s, dt, rng);
  GaussMarkov acc_bias_x(params.acc_bias_instability, params.tau_acc_bias_s, dt, rng);
  GaussMarkov acc_bias_y(params.acc_bias_instability, params.tau_acc_bias_s, dt, rng);
  GaussMarkov acc_bias_z(params.acc_bias_instability, params.tau_acc_bias_s, dt, rng);

  const double gyro_white = params.gyro_noise_density * std::sqrt(rate);
  const double acc_white = params.acc_noise_density * std::sqrt(rate);
  const double gyro_rw_step = params.gyro_random_walk * std::sqrt(dt);
  const double acc_rw_step = params.acc_random_walk * std::sqrt(dt);
  Vec3 gyro_rw = Vec3::Zero(), acc_rw = Vec3::Zero();

  for (auto& s : out) {
    const Vec3 gbias(gyro_bias_x.step(), gyro_bias_y.step(), gyro_bias_z.step());
    const Vec3 abias(acc_bias_x.step(), acc_bias_y.step(), acc_bias_z.step());
    if (gyro_rw_step > 0)
      gyro_rw += gyro_rw_step * Vec3(rng.gaussian(), rng.gaussian(), rng.gaussian());
    if (acc_rw_step > 0)
      acc_rw += acc_rw_step * Vec3(rng.gaussian(), rng.gaussian(), rng.gaussian());
    if (gyro_white > 0)
      s.rel_gyro += gyro_white * Vec3(rng.gaussian(), rng.gaussian(), rng.gaussian());
    if (acc_white > 0)
      s.rel_acc += acc_white * Vec3(rng.gaussian(), rng.gaussian(), rng.gaussian());
    s.rel_gyro += gbias + gyro_rw;
    s.rel_acc += abias + acc_rw;
  }
  return out;
}

inline void write_measurements_csv(const std::vector<ImuSample>& samples,
                                   const std::string& path) {
  CsvWriter w(path);
  w.row({"t", "ax", "ay", "az", "wx", "wy", "wz"});
  for (const auto& s : samples) {
    w.row({fmt_double(s.t), fmt_double(s.rel_acc.x()), fmt_double(s.rel_acc.y()),
           fmt_double(s.rel_acc.z()), fmt_double(s.rel_gyro.x()),
           fmt_double(s.rel_gyro.y()), fmt_double(s.rel_gyro.z())});
  }
}

inline std::vector<ImuSample> read_measurements_csv(const std::string& path) {
  const auto rows = read_csv(path);
  std::vector<ImuSample> out;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 7) throw std::runtime_error("bad measurement row in " + path);
    ImuSample s;
    s.t = std::stod(r[0]);
    s.rel_acc = Vec3(std::stod(r[1]), std::stod(r[2]), std::stod(r[3]));
    s.rel_gyro = Vec3(std::stod(r[4]), std::stod(r[5]), std::stod(r[6]));
    out.push_back(s);
  }
  return out;
}

}  // namespace vtnav
