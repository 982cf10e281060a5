#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "vtnav/core/rng.hpp"
#include "vtnav/core/so3.hpp"

namespace vtnav {

namespace thermal_group {
inline constexpr int kBus = 0;
inline constexpr int kPanel = 1;
inline constexpr int kAntenna = 2;
inline constexpr int kCount = 3;
}  // namespace thermal_group

struct Triangle {
  Vec3 v0, v1, v2;      // body frame, meters
  double vis_albedo;    // [0,1]
  double emissivity;    // [0,1]
  int group;            // thermal group id
  double internal_offset_k = 0.0;  // static heating texture, kelvin
};

// Parametric low-poly stand-in: box bus, one solar wing, drum antenna.
// Faces are subdivided into cells so the albedo/emission jitter produces
// trackable surface texture in both bands.
struct TargetModel {
  std::vector<Triangle> triangles;

  Vec3 normal(size_t i) const {
    const Triangle& t = triangles[i];
    return (t.v1 - t.v0).cross(t.v2 - t.v0).normalized();
  }

  double bounding_radius() const {
    double r = 0.0;
    for (const auto& t : triangles)
      for (const Vec3* v : {&t.v0, &t.v1, &t.v2}) r = std::max(r, v->norm());
    return r;
  }
};

struct BuildTargetConfig {
  // bus extents
  double bus_x = 1.9, bus_y = 1.2, bus_z = 1.2;
  // solar wing extents (thin box along +y)
  double panel_span = 1.8, panel_width = 1.1, panel_thickness = 0.05, panel_gap = 0.1;
  // antenna drum on the -x face
  double antenna_radius = 0.35, antenna_length = 0.5;
  int antenna_segments = 12;
  double cell_size = 0.3;          // target face-subdivision pitch
  double albedo_base = 0.55;
  double albedo_jitter = 0.3;
  double panel_albedo = 0.25;
  double emissivity_base = 0.92;
  double emissivity_jitter = 0.05;
  double sigma_internal_k = 5.0;   // stddev of the static heating texture
};

namespace detail {

// subdivided axis-aligned quad; ax/bx index the in-plane axes
inline void add_grid_quad(std::vector<Triangle>& out, const Vec3& origin, const Vec3& du,
                          const Vec3& dv, int nu, int nv, bool flip, int group) {
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nv; ++j) {
      const Vec3 p00 = origin + du * (double(i) / nu) + dv * (double(j) / nv);
      const Vec3 p10 = origin + du * (double(i + 1) / nu) + dv * (double(j) / nv);
      const Vec3 p01 = origin + du * (double(i) / nu) + dv * (double(j + 1) / nv);
      const Vec3 p11 = origin + du * (double(i + 1) / nu) + dv * (double(j + 1) / nv);
      Triangle a{p00, p10, p11, 0, 0, group};
      Triangle b{p00, p11, p01, 0, 0, group};
      if (flip) {
        std::swap(a.v1, a.v2);
        std::swap(b.v1, b.v2);
      }
      out.push_back(a);
      out.push_back(b);
    }
  }
}

inline void add_box(std::vector<Triangle>& out, const Vec3& lo, const Vec3& hi,
                    double cell, int group) {
  const Vec3 d = hi - lo;
  auto cells = [cell](double len) { return std::max(1, int(std::ceil(len / cell))); };
  const int nx = cells(d.x()), ny = cells(d.y()), nz = cells(d.z());
  // +x / -x
  add_grid_quad(out, Vec3(hi.x(), lo.y(), lo.z()), Vec3(0, d.y(), 0), Vec3(0, 0, d.z()), ny, nz, false, group);
  add_grid_quad(out, Vec3(lo.x(), lo.y(), lo.z()), Vec3(0, d.y(), 0), Vec3(0, 0, d.z()), ny, nz, true, group);
  // +y / -y
  add_grid_quad(out, Vec3(lo.x(), hi.y(), lo.z()), Vec3(d.x(), 0, 0), Vec3(0, 0, d.z()), nx, nz, true, group);
  add_grid_quad(out, Vec3(lo.x(), lo.y(), lo.z()), Vec3(d.x(), 0, 0), Vec3(0, 0, d.z()), nx, nz, false, group);
  // +z / -z
  add_grid_quad(out, Vec3(lo.x(), lo.y(), hi.z()), Vec3(d.x(), 0, 0), Vec3(0, d.y(), 0), nx, ny, false, group);
  add_grid_quad(out, Vec3(lo.x(), lo.y(), lo.z()), Vec3(d.x(), 0, 0), Vec3(0, d.y(), 0), nx, ny, true, group);
}

inline void add_drum(std::vector<Triangle>& out, double x0, double x1, double radius,
                     int segments, int group) {
  for (int k = 0; k < segments; ++k) {
    const double a0 = 2.0 * M_PI * k / segments;
    const double a1 = 2.0 * M_PI * (k + 1) / segments;
    const Vec3 r0(0, radius * std::cos(a0), radius * std::sin(a0));
    const Vec3 r1(0, radius * std::cos(a1), radius * std::sin(a1));
    const Vec3 p00 = Vec3(x0, 0, 0) + r0, p01 = Vec3(x0, 0, 0) + r1;
    const Vec3 p10 = Vec3(x1, 0, 0) + r0, p11 = Vec3(x1, 0, 0) + r1;
    out.push_back({p00, p01, p11, 0, 0, group});
    out.push_back({p00, p11, p10, 0, 0, group});
    // caps
    out.push_back({Vec3(x0, 0, 0), p01, p00, 0, 0, group});
    out.push_back({Vec3(x1, 0, 0), p10, p11, 0, 0, group});
  }
}

}  // namespace detail

inline TargetModel build_target_model(std::uint64_t seed,
                                      const BuildTargetConfig& cfg = {}) {
  TargetModel m;
  const Vec3 bus_half(0.5 * cfg.bus_x, 0.5 * cfg.bus_y, 0.5 * cfg.bus_z);
  detail::add_box(m.triangles, -bus_half, bus_half, cfg.cell_size, thermal_group::kBus);

  const double py0 = bus_half.y() + cfg.panel_gap;
  detail::add_box(m.triangles,
                  Vec3(-0.5 * cfg.panel_thickness, py0, -0.5 * cfg.panel_width),
                  Vec3(0.5 * cfg.panel_thickness, py0 + cfg.panel_span, 0.5 * cfg.panel_width),
                  cfg.cell_size, thermal_group::kPanel);

  detail::add_drum(m.triangles, -bus_half.x() - cfg.antenna_length, -bus_half.x(),
                   cfg.antenna_radius, cfg.antenna_segments, thermal_group::kAntenna);

  Rng rng(seed, seed_stream::kTargetModel);
  for (auto& t : m.triangles) {
    if (t.group == thermal_group::kPanel) {
      t.vis_albedo = std::clamp(cfg.panel_albedo + cfg.albedo_jitter * (rng.uniform() - 0.5),
                                0.02, 0.98);
    } else {
      t.vis_albedo = std::clamp(cfg.albedo_base + cfg.albedo_jitter * (rng.uniform() - 0.5) * 2.0,
                                0.02, 0.98);
    }
    t.emissivity = std::clamp(cfg.emissivity_base + cfg.emissivity_jitter * (rng.uniform() - 0.5) * 2.0,
                              0.5, 1.0);
    t.internal_offset_k = rng.gaussian(0.0, cfg.sigma_internal_k);
  }
  return m;
}

}  // namespace vtnav
