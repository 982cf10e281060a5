#pragma once

#include <cmath>
#include <stdexcept>

#include "vtnav/imgproc/resize.hpp"
#include "vtnav/scenegen/camera.hpp"

namespace vtnav {

// Exact angular-resolution-ratio map between the co-boresighted cameras:
// scale by px/deg ratio, then center-crop to the narrower field of view.
struct RegistrationMap {
  double scale = 1.0;
  int crop_x = 0;
  int crop_y = 0;
  int out_width = 0;
  int out_height = 0;
};

inline RegistrationMap registration_map(const CameraIntrinsics& vis_cam,
                                        const CameraIntrinsics& tir_cam) {
  const double scale = vis_cam.px_per_rad / tir_cam.px_per_rad;
  if (!(scale > 0)) throw std::invalid_argument("registration: bad camera scales");
  const double sw = tir_cam.width * scale;
  const double sh = tir_cam.height * scale;
  if (std::abs(sw - std::round(sw)) > 1e-6 || std::abs(sh - std::round(sh)) > 1e-6)
    throw std::invalid_argument("registration: scaled size is not integral");
  const int scaled_w = static_cast<int>(std::lround(sw));
  const int scaled_h = static_cast<int>(std::lround(sh));
  if (std::abs(vis_cam.vfov_deg - tir_cam.vfov_deg) > 1e-9)
    throw std::invalid_argument("registration: vertical fields of view must match");
  if (scaled_w < vis_cam.width || scaled_h < vis_cam.height)
    throw std::invalid_argument("registration: camera fields of view are incompatible");
  RegistrationMap m;
  m.scale = scale;
  m.crop_x = (scaled_w - vis_cam.width) / 2;
  m.crop_y = (scaled_h - vis_cam.height) / 2;
  m.out_width = vis_cam.width;
  m.out_height = vis_cam.height;
  return m;
}

inline GrayImage register_tir_to_vis(const GrayImage& tir, const CameraIntrinsics& vis_cam,
                                     const CameraIntrinsics& tir_cam) {
  if (tir.width != tir_cam.width || tir.height != tir_cam.height)
    throw std::invalid_argument("registration: image does not match the camera");
  const RegistrationMap m = registration_map(vis_cam, tir_cam);
  const GrayImage up = m.scale == 1.0 ? tir : upscale_bicubic(tir, m.scale);
  GrayImage out(m.out_width, m.out_height);
  for (int y = 0; y < m.out_height; ++y)
    for (int x = 0; x < m.out_width; ++x) out.at(x, y) = up.at(x + m.crop_x, y + m.crop_y);
  return out;
}

}  // namespace vtnav
