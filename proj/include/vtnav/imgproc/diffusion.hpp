#pragma once

#include <cmath>
#include <stdexcept>

#include "vtnav/core/image.hpp"

namespace vtnav {

enum class Conduction { kExponential, kRational };

// Perona-Malik diffusion, explicit 4-neighbor scheme with replicated edges.
// Smooths homogeneous regions while gradients past kappa survive.
inline GrayImage anisotropic_diffusion(const GrayImage& img, int iters, double kappa,
                                       double lambda,
                                       Conduction conduction = Conduction::kExponential) {
  if (iters < 0) throw std::invalid_argument("anisotropic_diffusion: iters must be >= 0");
  if (!(kappa > 0)) throw std::invalid_argument("anisotropic_diffusion: kappa must be > 0");
  if (!(lambda > 0) || lambda > 0.25)
    throw std::invalid_argument("anisotropic_diffusion: lambda must be in (0, 0.25]");

  auto g = [kappa, conduction](double grad) {
    const double r = grad / kappa;
    if (conduction == Conduction::kExponential) return std::exp(-r * r);
    return 1.0 / (1.0 + r * r);
  };

  GrayImage cur = img;
  GrayImage next(img.width, img.height);
  for (int it = 0; it < iters; ++it) {
    for (int y = 0; y < cur.height; ++y) {
      for (int x = 0; x < cur.width; ++x) {
        const double c = cur.at(x, y);
        const double dn = cur.at_clamped(x, y - 1) - c;
        const double ds = cur.at_clamped(x, y + 1) - c;
        const double de = cur.at_clamped(x + 1, y) - c;
        const double dw = cur.at_clamped(x - 1, y) - c;
        next.at(x, y) = c + lambda * (g(std::abs(dn)) * dn + g(std::abs(ds)) * ds +
                                      g(std::abs(de)) * de + g(std::abs(dw)) * dw);
      }
    }
    std::swap(cur, next);
  }
  return cur;
}

}  // namespace vtnav
