#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "vtnav/core/image.hpp"
#include "vtnav/imgproc/mask.hpp"

namespace vtnav {

struct ClaheParams {
  int tiles_x = 8;
  int tiles_y = 8;
  double clip_limit = 2.0;
  // tiles with foreground dynamic range below this bypass equalization,
  // which keeps flat or eclipse tiles from amplifying noise
  double bypass_range = 1.0 / 256.0;
};

namespace detail {

constexpr int kClaheBins = 256;

struct TileMap {
  bool bypass = true;
  std::array<double, kClaheBins> lut{};  // bin -> output value

  double apply(double v) const {
    if (bypass) return v;
    int bin = static_cast<int>(v * kClaheBins);
    bin = std::clamp(bin, 0, kClaheBins - 1);
    return lut[bin];
  }
};

inline TileMap build_tile_map(const GrayImage& img, const Mask& mask, int x0, int y0,
                              int x1, int y1, double clip_limit, double bypass_range) {
  TileMap map;
  std::array<int, kClaheBins> hist{};
  int count = 0;
  double lo = 1.0, hi = 0.0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      if (!mask.at(x, y)) continue;
      const double v = img.at(x, y);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      int bin = static_cast<int>(v * kClaheBins);
      hist[std::clamp(bin, 0, kClaheBins - 1)]++;
      ++count;
    }
  }
  if (count == 0 || hi - lo < bypass_range) return map;  // bypass

  // clip and redistribute
  const double avg = static_cast<double>(count) / kClaheBins;
  const int limit = std::max(1, static_cast<int>(std::ceil(clip_limit * avg)));
  long excess = 0;
  for (int& h : hist) {
    if (h > limit) {
      excess += h - limit;
      h = limit;
    }
  }
  const long bonus = excess / kClaheBins;
  long leftover = excess - bonus * kClaheBins;
  for (int b = 0; b < kClaheBins; ++b) {
    hist[b] += static_cast<int>(bonus);
    if (leftover > 0) {
      hist[b] += 1;
      --leftover;
    }
  }

  // cumulative mapping normalized from the first occupied bin
  long cum = 0;
  long cdf_min = -1;
  std::array<long, kClaheBins> cdf{};
  for (int b = 0; b < kClaheBins; ++b) {
    cum += hist[b];
    cdf[b] = cum;
    if (cdf_min < 0 && hist[b] > 0) cdf_min = cum;
  }
  const double denom = static_cast<double>(cum - cdf_min);
  map.bypass = false;
  for (int b = 0; b < kClaheBins; ++b) {
    map.lut[b] = denom > 0 ? std::clamp((cdf[b] - cdf_min) / denom, 0.0, 1.0)
                           : (b + 0.5) / kClaheBins;
  }
  return map;
}

}  // namespace detail

// Contrast-limited adaptive histogram equalization with bilinear blending
// between tile mappings.  Background pixels stay at zero.
inline GrayImage clahe(const GrayImage& img, const Mask& mask, const ClaheParams& p = {}) {
  if (p.tiles_x < 1 || p.tiles_y < 1)
    throw std::invalid_argument("clahe: tile grid must be >= 1x1");
  if (p.clip_limit < 1.0) throw std::invalid_argument("clahe: clip limit must be >= 1");
  if (mask.width != img.width || mask.height != img.height)
    throw std::invalid_argument("clahe: mask dimensions mismatch");

  const int nx = p.tiles_x, ny = p.tiles_y;
  std::vector<detail::TileMap> maps(static_cast<size_t>(nx) * ny);
  const double tile_w = static_cast<double>(img.width) / nx;
  const double tile_h = static_cast<double>(img.height) / ny;
  for (int ty = 0; ty < ny; ++ty) {
    for (int tx = 0; tx < nx; ++tx) {
      const int x0 = static_cast<int>(std::floor(tx * tile_w));
      const int y0 = static_cast<int>(std::floor(ty * tile_h));
      const int x1 = tx == nx - 1 ? img.width : static_cast<int>(std::floor((tx + 1) * tile_w));
      const int y1 = ty == ny - 1 ? img.height : static_cast<int>(std::floor((ty + 1) * tile_h));
      maps[ty * nx + tx] =
          detail::build_tile_map(img, mask, x0, y0, x1, y1, p.clip_limit, p.bypass_range);
    }
  }

  GrayImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!mask.at(x, y)) continue;
      const double v = img.at(x, y);
      // position in tile-center coordinates
      const double u = (x + 0.5) / tile_w - 0.5;
      const double w = (y + 0.5) / tile_h - 0.5;
      int t0x = static_cast<int>(std::floor(u));
      int t0y = static_cast<int>(std::floor(w));
      const double fx = std::clamp(u - t0x, 0.0, 1.0);
      const double fy = std::clamp(w - t0y, 0.0, 1.0);
      const int ax = std::clamp(t0x, 0, nx - 1), bx = std::clamp(t0x + 1, 0, nx - 1);
      const int ay = std::clamp(t0y, 0, ny - 1), by = std::clamp(t0y + 1, 0, ny - 1);
      const double v00 = maps[ay * nx + ax].apply(v);
      const double v10 = maps[ay * nx + bx].apply(v);
      const double v01 = maps[by * nx + ax].apply(v);
      const double v11 = maps[by * nx + bx].apply(v);
      out.at(x, y) = std::clamp(
          (1 - fy) * ((1 - fx) * v00 + fx * v10) + fy * ((1 - fx) * v01 + fx * v11), 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace vtnav
