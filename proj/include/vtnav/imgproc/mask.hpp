#pragma once

#include <cstdint>
#include <vector>

#include "vtnav/core/image.hpp"

namespace vtnav {

struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // 1 = foreground

  Mask() = default;
  Mask(int w, int h) : width(w), height(h), bits(static_cast<size_t>(w) * h, 0) {}

  bool at(int x, int y) const { return bits[static_cast<size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v) { bits[static_cast<size_t>(y) * width + x] = v ? 1 : 0; }

  size_t area() const {
    size_t n = 0;
    for (auto b : bits) n += b;
    return n;
  }
};

// Threshold split of target and dark background, followed by one pass of
// 3x3 majority smoothing to kill isolated noise pixels.
inline Mask threshold_mask(const GrayImage& img, double thresh) {
  Mask raw(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) raw.set(x, y, img.at(x, y) >= thresh);

  Mask out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      int fg = 0, total = 0;
      for (int j = -1; j <= 1; ++j) {
        for (int i = -1; i <= 1; ++i) {
          const int xx = x + i, yy = y + j;
          if (xx < 0 || yy < 0 || xx >= img.width || yy >= img.height) continue;
          ++total;
          fg += raw.at(xx, yy) ? 1 : 0;
        }
      }
      out.set(x, y, 2 * fg > total);
    }
  }
  return out;
}

}  // namespace vtnav
