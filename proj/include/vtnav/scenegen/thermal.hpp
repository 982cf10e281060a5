#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "vtnav/scenegen/target.hpp"

namespace vtnav {

// Heating drive terms for one step.  Intensities are normalized scalars;
// the incidence is the area-weighted mean sun cosine of each group.
struct ThermalInputs {
  bool sun_visible = true;
  std::array<double, thermal_group::kCount> sun_incidence{};  // [0,1] per group
  double earth_albedo = 0.0;  // reflected-sunlight intensity [0,1]
  double earth_ir = 1.0;      // emitted intensity (constant over the surface)
  double internal = 1.0;
};

// First-order lag per component group.  Equilibrium temperature is an
// affine combination of the four source intensities.
struct ThermalConfig {
  std::array<double, thermal_group::kCount> tau_s{1800.0, 200.0, 600.0};
  double t_base_k = 150.0;    // cold-space sink temperature
  double k_sun = 120.0;       // kelvin per unit sun intensity at normal incidence
  double k_albedo = 20.0;
  double k_earth_ir = 40.0;
  double k_internal = 40.0;
  double t_min_k = 200.0;     // radiance mapping endpoints
  double t_max_k = 350.0;

  void validate() const {
    for (double tau : tau_s)
      if (!(tau > 0)) throw std::invalid_argument("thermal: tau must be > 0");
    if (!(tau_s[thermal_group::kPanel] < tau_s[thermal_group::kBus]))
      throw std::invalid_argument("thermal: panel must respond faster than the bus");
  }
};

struct ThermalState {
  std::array<double, thermal_group::kCount> temperature_k{};

  void clamp_physical() {
    for (double& t : temperature_k) t = std::clamp(t, 150.0, 400.0);
  }
};

inline double thermal_equilibrium(const ThermalConfig& cfg, const ThermalInputs& in,
                                  int group) {
  const double sun = in.sun_visible ? in.sun_incidence[group] : 0.0;
  return cfg.t_base_k + cfg.k_sun * sun + cfg.k_albedo * in.earth_albedo +
         cfg.k_earth_ir * in.earth_ir + cfg.k_internal * in.internal;
}

inline ThermalState thermal_init(const ThermalConfig& cfg, const ThermalInputs& in) {
  ThermalState s;
  for (int g = 0; g < thermal_group::kCount; ++g)
    s.temperature_k[g] = thermal_equilibrium(cfg, in, g);
  s.clamp_physical();
  return s;
}

inline ThermalState thermal_step(const ThermalState& state, double dt,
                                 const ThermalInputs& in, const ThermalConfig& cfg) {
  if (!(dt > 0)) throw std::invalid_argument("thermal_step: dt must be > 0");
  ThermalState out = state;
  for (int g = 0; g < thermal_group::kCount; ++g) {
    const double teq = thermal_equilibrium(cfg, in, g);
    const double blend = 1.0 - std::exp(-dt / cfg.tau_s[g]);
    out.temperature_k[g] += (teq - out.temperature_k[g]) * blend;
  }
  out.clamp_physical();
  return out;
}

}  // namespace vtnav
