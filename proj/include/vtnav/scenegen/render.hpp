#pragma once

#include <algorithm>
#include <limits>
#include <memory>
#include <vector>

#include "vtnav/core/image.hpp"
#include "vtnav/scenegen/camera.hpp"
#include "vtnav/scenegen/target.hpp"
#include "vtnav/scenegen/thermal.hpp"

namespace vtnav {

namespace detail {

struct RayHit {
  double t = std::numeric_limits<double>::infinity();
  int tri = -1;
};

inline bool moller_trumbore(const Vec3& o, const Vec3& d, const Triangle& tri,
                            double& t_out) {
  const Vec3 e1 = tri.v1 - tri.v0;
  const Vec3 e2 = tri.v2 - tri.v0;
  const Vec3 p = d.cross(e2);
  const double det = e1.dot(p);
  if (std::abs(det) < 1e-14) return false;
  const double inv = 1.0 / det;
  const Vec3 s = o - tri.v0;
  const double u = s.dot(p) * inv;
  if (u < 0.0 || u > 1.0) return false;
  const Vec3 q = s.cross(e1);
  const double v = d.dot(q) * inv;
  if (v < 0.0 || u + v > 1.0) return false;
  const double t = e2.dot(q) * inv;
  if (t <= 1e-9) return false;
  t_out = t;
  return true;
}

struct Aabb {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());

  void grow(const Vec3& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  void grow(const Triangle& t) {
    grow(t.v0);
    grow(t.v1);
    grow(t.v2);
  }

  bool hit(const Vec3& o, const Vec3& inv_d, double t_max) const {
    double t0 = 0.0, t1 = t_max;
    for (int a = 0; a < 3; ++a) {
      double ta = (lo[a] - o[a]) * inv_d[a];
      double tb = (hi[a] - o[a]) * inv_d[a];
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
      if (t0 > t1) return false;
    }
    return true;
  }
};

// median-split bounding volume hierarchy over the target triangles
class Bvh {
 public:
  explicit Bvh(const TargetModel& model) : model_(&model) {
    index_.resize(model.triangles.size());
    for (size_t i = 0; i < index_.size(); ++i) index_[i] = static_cast<int>(i);
    nodes_.reserve(2 * index_.size());
    build(0, static_cast<int>(index_.size()));
  }

  RayHit closest(const Vec3& o, const Vec3& d) const {
    RayHit best;
    const Vec3 inv_d = d.cwiseInverse();
    traverse(0, o, d, inv_d, best, false);
    return best;
  }

  bool any_hit(const Vec3& o, const Vec3& d, double t_max) const {
    RayHit h;
    h.t = t_max;
    const Vec3 inv_d = d.cwiseInverse();
    return traverse(0, o, d, inv_d, h, true);
  }

 private:
  struct Node {
    Aabb box;
    int left = -1, right = -1;  // children, or leaf range below
    int begin = 0, count = 0;
  };

  int build(int begin, int end) {
    Node node;
    for (int i = begin; i < end; ++i) node.box.grow(model_->triangles[index_[i]]);
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    if (end - begin <= 4) {
      nodes_[id].begin = begin;
      nodes_[id].count = end - begin;
      return id;
    }
    const Vec3 ext = node.box.hi - node.box.lo;
    int axis = 0;
    if (ext.y() > ext.x()) axis = 1;
    if (ext.z() > ext[axis]) axis = 2;
    const int mid = (begin + end) / 2;
    std::nth_element(index_.begin() + begin, index_.begin() + mid, index_.begin() + end,
                     [this, axis](int a, int b) {
                       const auto& ta = model_->triangles[a];
                       const auto& tb = model_->triangles[b];
                       const double ca = ta.v0[axis] + ta.v1[axis] + ta.v2[axis];
                       const double cb = tb.v0[axis] + tb.v1[axis] + tb.v2[axis];
                       if (ca != cb) return ca < cb;
                       return a < b;
                     });
    const int l = build(begin, mid);
    const int r = build(mid, end);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  bool traverse(int id, const Vec3& o, const Vec3& d, const Vec3& inv_d, RayHit& best,
                bool any) const {
    const Node& node = nodes_[id];
    if (!node.box.hit(o, inv_d, best.t)) return false;
    if (node.count > 0 || node.left < 0) {
      bool found = false;
      for (int i = node.begin; i < node.begin + node.count; ++i) {
        double t;
        if (moller_trumbore(o, d, model_->triangles[index_[i]], t) && t < best.t) {
          best.t = t;
          best.tri = index_[i];
          found = true;
          if (any) return true;
        }
      }
      return found;
    }
    const bool a = traverse(node.left, o, d, inv_d, best, any);
    if (any && a) return true;
    const bool b = traverse(node.right, o, d, inv_d, best, any);
    return a || b;
  }

  const TargetModel* model_;
  std::vector<int> index_;
  std::vector<Node> nodes_;
};

}  // namespace detail

// Lighting terms for one visible-band frame.  The Earth-albedo fill comes
// from the nadir direction scaled by the subsolar cosine; both terms gate
// off during eclipse.
struct EnvironmentLight {
  Vec3 sun_dir = Vec3(1, 0, 0);    // toward the sun, target body frame
  bool eclipse = false;
  Vec3 nadir_dir = Vec3(-1, 0, 0); // toward Earth center, target body frame
  double albedo_illum = 1.0;       // subsolar cosine, [0,1]
  double k_sun = 0.92;
  double k_albedo = 0.18;
};

// Shared ray caster so successive frames reuse the acceleration structure.
class TargetRenderer {
 public:
  explicit TargetRenderer(const TargetModel& model) : model_(&model), bvh_(model) {}

  const TargetModel& model() const { return *model_; }

  // Visible band: Lambertian sun term with a cast shadow ray, plus the
  // hemispheric Earth-albedo fill.  Earth itself is never in frame, so the
  // background stays black.
  GrayImage render_vis(const Pose& cam_pose, const CameraIntrinsics& cam,
                       const EnvironmentLight& light) const {
    GrayImage img(cam.width, cam.height);
    const double gate = light.eclipse ? 0.0 : 1.0;
    if (gate == 0.0) return img;
    for (int y = 0; y < cam.height; ++y) {
      for (int x = 0; x < cam.width; ++x) {
        const Vec3 dir = cam_pose.R * cam.ray(Vec2(x + 0.5, y + 0.5));
        const auto hit = bvh_.closest(cam_pose.t, dir);
        if (hit.tri < 0) continue;
        const Triangle& tri = model_->triangles[hit.tri];
        Vec3 n = model_->normal(hit.tri);
        if (n.dot(dir) > 0) n = -n;  // face the viewer
        const Vec3 p = cam_pose.t + hit.t * dir;
        double sun_term = std::max(0.0, n.dot(light.sun_dir));
        if (sun_term > 0.0) {
          const Vec3 origin = p + 1e-6 * n;
          if (bvh_.any_hit(origin, light.sun_dir, 1e9)) sun_term = 0.0;
        }
        const double fill = light.k_albedo * std::max(0.0, n.dot(light.nadir_dir)) *
                            light.albedo_illum;
        img.at(x, y) = std::clamp(tri.vis_albedo * (light.k_sun * sun_term + fill), 0.0, 1.0);
      }
    }
    return img;
  }

  // Thermal band: emissivity-weighted linear radiance between the mapping
  // endpoints.  Face temperature is its group temperature plus the static
  // heating texture.
  GrayImage render_tir(const Pose& cam_pose, const CameraIntrinsics& cam,
                       const ThermalState& state, const ThermalConfig& cfg) const {
    GrayImage img(cam.width, cam.height);
    const double span = cfg.t_max_k - cfg.t_min_k;
    for (int y = 0; y < cam.height; ++y) {
      for (int x = 0; x < cam.width; ++x) {
        const Vec3 dir = cam_pose.R * cam.ray(Vec2(x + 0.5, y + 0.5));
        const auto hit = bvh_.closest(cam_pose.t, dir);
        if (hit.tri < 0) continue;
        const Triangle& tri = model_->triangles[hit.tri];
        const double t_face = state.temperature_k[tri.group] + tri.internal_offset_k;
        img.at(x, y) = std::clamp(tri.emissivity * (t_face - cfg.t_min_k) / span, 0.0, 1.0);
      }
    }
    return img;
  }

  // area-weighted mean sun cosine per thermal group (drives the heating)
  std::array<double, thermal_group::kCount> sun_incidence(const Vec3& sun_dir) const {
    std::array<double, thermal_group::kCount> num{};
    std::array<double, thermal_group::kCount> den{};
    for (size_t i = 0; i < model_->triangles.size(); ++i) {
      const Triangle& t = model_->triangles[i];
      const Vec3 cross = (t.v1 - t.v0).cross(t.v2 - t.v0);
      const double area = 0.5 * cross.norm();
      const Vec3 n = cross.normalized();
      num[t.group] += area * std::max(0.0, n.dot(sun_dir));
      den[t.group] += area;
    }
    std::array<double, thermal_group::kCount> out{};
    for (int g = 0; g < thermal_group::kCount; ++g)
      out[g] = den[g] > 0 ? num[g] / den[g] : 0.0;
    return out;
  }

 private:
  const TargetModel* model_;
  detail::Bvh bvh_;
};

}  // namespace vtnav
