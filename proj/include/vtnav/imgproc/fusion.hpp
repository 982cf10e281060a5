#pragma once

#include <stdexcept>
#include <utility>

#include "vtnav/imgproc/diffusion.hpp"
#include "vtnav/imgproc/filters.hpp"

namespace vtnav {

struct TsifsdParams {
  int mean_window = 35;          // base/detail split
  int saliency_mean_window = 35;
  int saliency_median_window = 3;
  double weight_eps = 1e-8;      // below this saliency sum, weights fall back to 1/2
};

struct AdfParams {
  int iters = 6;
  double kappa = 0.05;
  double lambda = 0.15;
  Conduction conduction = Conduction::kExponential;
};

inline void require_same_dims(const GrayImage& a, const GrayImage& b, const char* what) {
  if (a.width != b.width || a.height != b.height)
    throw std::invalid_argument(std::string(what) + ": image dimensions mismatch");
}

// Two-scale fusion with saliency-weighted detail blending: detail layers mix
// by per-pixel saliency share, base layers by a simple average.
inline GrayImage fuse_tsifsd(const GrayImage& vis, const GrayImage& tir,
                             const TsifsdParams& p = {}) {
  require_same_dims(vis, tir, "fuse_tsifsd");
  auto [base_v, detail_v] = decompose_mean(vis, p.mean_window);
  auto [base_t, detail_t] = decompose_mean(tir, p.mean_window);
  const GrayImage sal_v = saliency_map(vis, p.saliency_mean_window, p.saliency_median_window);
  const GrayImage sal_t = saliency_map(tir, p.saliency_mean_window, p.saliency_median_window);

  GrayImage out(vis.width, vis.height);
  for (size_t i = 0; i < out.size(); ++i) {
    const double sum = sal_v.data[i] + sal_t.data[i];
    const double w = sum < p.weight_eps ? 0.5 : sal_v.data[i] / sum;
    const double base = 0.5 * (base_v.data[i] + base_t.data[i]);
    const double detail = w * detail_v.data[i] + (1.0 - w) * detail_t.data[i];
    out.data[i] = std::clamp(base + detail, 0.0, 1.0);
  }
  return out;
}

// Dominant-eigenvector weights of the 2x2 covariance of the detail layers.
inline std::pair<double, double> kl_weights(const GrayImage& d1, const GrayImage& d2) {
  require_same_dims(d1, d2, "kl_weights");
  const size_t n = d1.size();
  if (n < 2) throw std::invalid_argument("kl_weights: need at least 2 pixels");
  double m1 = 0, m2 = 0;
  for (size_t i = 0; i < n; ++i) {
    m1 += d1.data[i];
    m2 += d2.data[i];
  }
  m1 /= double(n);
  m2 /= double(n);
  double a = 0, b = 0, c = 0;  // cov = [[a, b], [b, c]]
  for (size_t i = 0; i < n; ++i) {
    const double x = d1.data[i] - m1;
    const double y = d2.data[i] - m2;
    a += x * x;
    b += x * y;
    c += y * y;
  }
  a /= double(n);
  b /= double(n);
  c /= double(n);

  const double tiny = 1e-300;
  if (std::abs(a) + std::abs(b) + std::abs(c) < tiny) return {0.5, 0.5};

  const double half_diff = 0.5 * (a - c);
  const double lam = 0.5 * (a + c) + std::sqrt(half_diff * half_diff + b * b);
  double v1, v2;
  if (std::abs(b) > 1e-18 * (std::abs(a) + std::abs(c))) {
    // two equivalent eigenvector forms; take the better-conditioned one
    if (std::abs(lam - a) > std::abs(lam - c)) {
      v1 = b;
      v2 = lam - a;
    } else {
      v1 = lam - c;
      v2 = b;
    }
  } else if (a > c) {
    v1 = 1;
    v2 = 0;
  } else if (c > a) {
    v1 = 0;
    v2 = 1;
  } else {
    return {0.5, 0.5};
  }
  const double s = std::abs(v1) + std::abs(v2);
  if (s < tiny) return {0.5, 0.5};
  return {std::abs(v1) / s, std::abs(v2) / s};
}

// Anisotropic-diffusion fusion: diffused bases average, detail layers mix by
// the principal-component weights of their joint covariance.
inline GrayImage fuse_adf(const GrayImage& vis, const GrayImage& tir,
                          const AdfParams& p = {}) {
  require_same_dims(vis, tir, "fuse_adf");
  GrayImage base_v = anisotropic_diffusion(vis, p.iters, p.kappa, p.lambda, p.conduction);
  GrayImage base_t = anisotropic_diffusion(tir, p.iters, p.kappa, p.lambda, p.conduction);
  snap_q24(base_v);
  snap_q24(base_t);
  GrayImage detail_v(vis.width, vis.height), detail_t(vis.width, vis.height);
  for (size_t i = 0; i < vis.size(); ++i) {
    detail_v.data[i] = vis.data[i] - base_v.data[i];
    detail_t.data[i] = tir.data[i] - base_t.data[i];
  }
  const auto [w1, w2] = kl_weights(detail_v, detail_t);
  GrayImage out(vis.width, vis.height);
  for (size_t i = 0; i < out.size(); ++i) {
    const double base = 0.5 * (base_v.data[i] + base_t.data[i]);
    out.data[i] = std::clamp(base + w1 * detail_v.data[i] + w2 * detail_t.data[i], 0.0, 1.0);
  }
  return out;
}

}  // namespace vtnav
