#pragma once

#include <cmath>
#include <stdexcept>

#include "vtnav/core/image.hpp"

namespace vtnav {

namespace detail {

// Catmull-Rom weights (bicubic kernel with a = -0.5)
inline double bicubic_weight(double t) {
  const double a = -0.5;
  const double x = std::abs(t);
  if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return (((x - 5.0) * x + 8.0) * x - 4.0) * a;
  return 0.0;
}

// Out-of-range taps extend the boundary linearly, which keeps linear ramps
// exact everywhere (replication would bend them at the border).
inline double tap_1d(const double* row, int n, int stride, int i) {
  if (n == 1) return row[0];
  if (i < 0) return row[0] + i * (row[stride] - row[0]);
  if (i >= n)
    return row[(n - 1) * stride] +
           (i - (n - 1)) * (row[(n - 1) * stride] - row[(n - 2) * stride]);
  return row[i * stride];
}

}  // namespace detail

inline GrayImage upscale_bicubic(const GrayImage& img, double scale) {
  if (scale < 1.0) throw std::invalid_argument("upscale_bicubic: scale must be >= 1");
  if (scale == 1.0) return img;
  const int out_w = static_cast<int>(std::lround(img.width * scale));
  const int out_h = static_cast<int>(std::lround(img.height * scale));

  // horizontal pass
  GrayImage tmp(out_w, img.height);
  for (int y = 0; y < img.height; ++y) {
    const double* row = img.data.data() + static_cast<size_t>(y) * img.width;
    for (int x = 0; x < out_w; ++x) {
      const double src = (x + 0.5) / scale - 0.5;
      const int i0 = static_cast<int>(std::floor(src));
      const double f = src - i0;
      double acc = 0.0;
      for (int k = -1; k <= 2; ++k)
        acc += detail::bicubic_weight(k - f) * detail::tap_1d(row, img.width, 1, i0 + k);
      tmp.at(x, y) = acc;
    }
  }
  // vertical pass
  GrayImage out(out_w, out_h);
  for (int x = 0; x < out_w; ++x) {
    const double* col = tmp.data.data() + x;
    for (int y = 0; y < out_h; ++y) {
      const double src = (y + 0.5) / scale - 0.5;
      const int i0 = static_cast<int>(std::floor(src));
      const double f = src - i0;
      double acc = 0.0;
      for (int k = -1; k <= 2; ++k)
        acc += detail::bicubic_weight(k - f) * detail::tap_1d(col, img.height, tmp.width, i0 + k);
      out.at(x, y) = std::clamp(acc, 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace vtnav
