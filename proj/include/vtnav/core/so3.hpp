#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace vtnav {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

// Rodrigues exponential map.
inline Mat3 so3_exp(const Vec3& w) {
  const double th = w.norm();
  const Mat3 W = skew(w);
  if (th < 1e-9) {
    return Mat3::Identity() + W + 0.5 * W * W;
  }
  const double a = std::sin(th) / th;
  const double b = (1.0 - std::cos(th)) / (th * th);
  return Mat3::Identity() + a * W + b * W * W;
}

// Logarithm map; handles angles near 0 and pi.
inline Vec3 so3_log(const Mat3& R) {
  const double tr = R.trace();
  const double c = std::min(1.0, std::max(-1.0, (tr - 1.0) * 0.5));
  const double th = std::acos(c);
  if (th < 1e-9) {
    return 0.5 * Vec3(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
  }
  if (th > M_PI - 1e-5) {
    // near pi: extract axis from the symmetric part
    Mat3 S = 0.5 * (R + Mat3::Identity());
    int k = 0;
    if (S(1, 1) > S(k, k)) k = 1;
    if (S(2, 2) > S(k, k)) k = 2;
    Vec3 axis = S.col(k) / std::sqrt(std::max(S(k, k), 1e-15));
    axis.normalize();
    // fix the sign using the antisymmetric part
    Vec3 w(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
    if (w.dot(axis) < 0) axis = -axis;
    return th * axis;
  }
  Vec3 w(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
  return (0.5 * th / std::sin(th)) * w;
}

// Right Jacobian of SO(3) and its inverse.
inline Mat3 so3_right_jacobian(const Vec3& w) {
  const double th = w.norm();
  const Mat3 W = skew(w);
  if (th < 1e-7) return Mat3::Identity() - 0.5 * W + (1.0 / 6.0) * W * W;
  const double th2 = th * th;
  return Mat3::Identity() - (1.0 - std::cos(th)) / th2 * W +
         (th - std::sin(th)) / (th2 * th) * W * W;
}

inline Mat3 so3_right_jacobian_inv(const Vec3& w) {
  const double th = w.norm();
  const Mat3 W = skew(w);
  if (th < 1e-7) return Mat3::Identity() + 0.5 * W + (1.0 / 12.0) * W * W;
  const double th2 = th * th;
  const double cot_half = th * (1.0 + std::cos(th)) / (2.0 * std::sin(th));
  return Mat3::Identity() + 0.5 * W + (1.0 - cot_half) / th2 * W * W;
}

// Nearest rotation matrix (polar decomposition via SVD).
inline Mat3 project_rotation(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 R = svd.matrixU() * svd.matrixV().transpose();
  if (R.determinant() < 0) {
    Mat3 d = Mat3::Identity();
    d(2, 2) = -1.0;
    R = svd.matrixU() * d * svd.matrixV().transpose();
  }
  return R;
}

inline double rotation_angle_rad(const Mat3& Ra, const Mat3& Rb) {
  return so3_log(Ra.transpose() * Rb).norm();
}

inline Mat3 rot_z(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 R;
  R << c, -s, 0, s, c, 0, 0, 0, 1;
  return R;
}

// Rigid transform: world point = R * local + t.
struct Pose {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();

  Pose() = default;
  Pose(const Mat3& R_, const Vec3& t_) : R(R_), t(t_) {}

  Pose inverse() const { return Pose(R.transpose(), -(R.transpose() * t)); }
  Pose operator*(const Pose& o) const { return Pose(R * o.R, R * o.t + t); }
  Vec3 operator*(const Vec3& p) const { return R * p + t; }
};

inline Eigen::Quaterniond pose_quat(const Pose& p) {
  Eigen::Quaterniond q(p.R);
  if (q.w() < 0) q.coeffs() *= -1.0;  // canonical sign for stable output
  return q;
}

}  // namespace vtnav
