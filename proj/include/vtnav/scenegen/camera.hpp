#pragma once

#include <cmath>
#include <stdexcept>

#include "vtnav/core/so3.hpp"

namespace vtnav {

// Angular (f-theta) camera: pixel offset is linear in the bearing angle per
// axis, so px/deg is constant across the field of view.  Continuous pixel
// coordinates put the center of pixel (i, j) at (i + 0.5, j + 0.5).
struct CameraIntrinsics {
  int width = 0;
  int height = 0;
  double hfov_deg = 0.0;
  double vfov_deg = 0.0;
  double focal_px = 0.0;  // pinhole-equivalent focal, width / (2 tan(hfov/2))
  double px_per_rad = 0.0;
  double cx = 0.0, cy = 0.0;

  static CameraIntrinsics from_fov(int w, int h, double hfov, double vfov) {
    if (w <= 0 || h <= 0 || !(hfov > 0) || !(vfov > 0))
      throw std::invalid_argument("camera: bad dimensions or field of view");
    const double kx = w / (hfov * M_PI / 180.0);
    const double ky = h / (vfov * M_PI / 180.0);
    if (std::abs(kx - ky) > 1e-9 * kx)
      throw std::invalid_argument("camera: pixels must be square (w/hfov == h/vfov)");
    CameraIntrinsics c;
    c.width = w;
    c.height = h;
    c.hfov_deg = hfov;
    c.vfov_deg = vfov;
    c.focal_px = w / (2.0 * std::tan(0.5 * hfov * M_PI / 180.0));
    c.px_per_rad = kx;
    c.cx = 0.5 * w;
    c.cy = 0.5 * h;
    return c;
  }

  double px_per_deg() const { return px_per_rad * M_PI / 180.0; }

  // camera-frame point (z forward) -> continuous pixel coords
  Vec2 project(const Vec3& p) const {
    return Vec2(cx + px_per_rad * std::atan2(p.x(), p.z()),
                cy + px_per_rad * std::atan2(p.y(), p.z()));
  }

  bool in_image(const Vec2& px) const {
    return px.x() >= 0 && px.x() < width && px.y() >= 0 && px.y() < height;
  }

  // unit bearing for a continuous pixel coordinate
  Vec3 ray(const Vec2& px) const {
    const double tx = std::tan((px.x() - cx) / px_per_rad);
    const double ty = std::tan((px.y() - cy) / px_per_rad);
    return Vec3(tx, ty, 1.0).normalized();
  }

  // normalized coordinates (x/z, y/z) used by the epipolar solver
  Vec2 normalized(const Vec2& px) const {
    return Vec2(std::tan((px.x() - cx) / px_per_rad),
                std::tan((px.y() - cy) / px_per_rad));
  }
};

// The two camera sets plus reduced-resolution variants for fast runs.
// Both presets keep the VIS px/deg at exactly twice the TIR px/deg.
struct CameraPair {
  CameraIntrinsics vis;
  CameraIntrinsics tir;
};

inline CameraPair cameras_paper(bool narrow) {
  if (narrow)
    return {CameraIntrinsics::from_fov(1024, 1024, 8.0, 8.0),
            CameraIntrinsics::from_fov(640, 512, 10.0, 8.0)};
  return {CameraIntrinsics::from_fov(1024, 1024, 25.0, 25.0),
          CameraIntrinsics::from_fov(640, 512, 31.25, 25.0)};
}

inline CameraPair cameras_desk(bool narrow) {
  if (narrow)
    return {CameraIntrinsics::from_fov(256, 256, 8.0, 8.0),
            CameraIntrinsics::from_fov(160, 128, 10.0, 8.0)};
  return {CameraIntrinsics::from_fov(256, 256, 25.0, 25.0),
          CameraIntrinsics::from_fov(160, 128, 31.25, 25.0)};
}

}  // namespace vtnav
