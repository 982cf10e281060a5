#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "vtnav/core/image.hpp"
#include "vtnav/core/rng.hpp"

namespace vtnav {

// i.i.d. Gaussian readout noise, clamped back to [0,1]
inline GrayImage apply_vis_noise(const GrayImage& img, double sigma, std::uint64_t seed) {
  if (sigma < 0) throw std::invalid_argument("apply_vis_noise: sigma must be >= 0");
  if (sigma == 0) return img;
  GrayImage out = img;
  Rng rng(seed, seed_stream::kVisNoise);
  for (double& v : out.data) v = std::clamp(v + rng.gaussian(0.0, sigma), 0.0, 1.0);
  return out;
}

// Microbolometer-style noise: fixed row/column streaks drawn once per run
// plus per-frame Gaussian noise.
inline GrayImage apply_tir_noise(const GrayImage& img, double sigma_gauss,
                                 double sigma_fpn, std::uint64_t run_seed,
                                 std::uint64_t frame_index = 0) {
  if (sigma_gauss < 0 || sigma_fpn < 0)
    throw std::invalid_argument("apply_tir_noise: sigmas must be >= 0");
  if (sigma_gauss == 0 && sigma_fpn == 0) return img;
  GrayImage out = img;

  std::vector<double> row_off(img.height, 0.0), col_off(img.width, 0.0);
  if (sigma_fpn > 0) {
    Rng fpn(run_seed, seed_stream::kTirFpn);
    for (double& v : col_off) v = fpn.gaussian(0.0, sigma_fpn);
    for (double& v : row_off) v = fpn.gaussian(0.0, sigma_fpn);
  }

  Rng g(run_seed ^ (0x51ed2700 + frame_index), seed_stream::kTirNoise);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double v = out.at(x, y) + row_off[y] + col_off[x];
      if (sigma_gauss > 0) v += g.gaussian(0.0, sigma_gauss);
      out.at(x, y) = std::clamp(v, 0.0, 1.0);
    }
  }
  return out;
}

namespace detail {

inline GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  const int r = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> k(2 * r + 1);
  double sum = 0.0;
  for (int i = -r; i <= r; ++i) {
    k[i + r] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += k[i + r];
  }
  for (double& v : k) v /= sum;
  GrayImage tmp(img.width, img.height), out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i) acc += k[i + r] * img.at_clamped(x + i, y);
      tmp.at(x, y) = acc;
    }
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int i = -r; i <= r; ++i) acc += k[i + r] * tmp.at_clamped(x, y + i);
      out.at(x, y) = acc;
    }
  return out;
}

}  // namespace detail

// Additive halo around saturated highlights: energy above the threshold is
// blurred and added back, emulating lens glare and bloom.
inline GrayImage apply_bloom(const GrayImage& img, double threshold, double radius,
                             double gain = 0.5) {
  if (!(threshold > 0.0) || threshold > 1.0)
    throw std::invalid_argument("apply_bloom: threshold must be in (0,1]");
  GrayImage excess(img.width, img.height);
  bool any = false;
  for (size_t i = 0; i < img.size(); ++i) {
    const double e = img.data[i] - threshold;
    if (e > 0) {
      excess.data[i] = e;
      any = true;
    }
  }
  if (!any) return img;
  const GrayImage halo = detail::gaussian_blur(excess, radius);
  GrayImage out = img;
  for (size_t i = 0; i < out.size(); ++i)
    out.data[i] = std::clamp(out.data[i] + gain * halo.data[i], 0.0, 1.0);
  return out;
}

}  // namespace vtnav
