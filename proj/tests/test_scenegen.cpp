#include <catch2/catch_amalgamated.hpp>
#include <map>

#include "vtnav/relorbit/scenario.hpp"
#include "vtnav/scenegen/camera.hpp"
#include "vtnav/scenegen/noise.hpp"
#include "vtnav/scenegen/render.hpp"
#include "vtnav/scenegen/target.hpp"
#include "vtnav/scenegen/thermal.hpp"

using namespace vtnav;

TEST_CASE("camera intrinsics") {
  SECTION("both camera sets keep the exact 2x angular-resolution ratio") {
    for (bool narrow : {false, true}) {
      for (auto pair : {cameras_paper(narrow), cameras_desk(narrow)}) {
        CHECK(pair.vis.px_per_deg() == Catch::Approx(2.0 * pair.tir.px_per_deg()).epsilon(1e-12));
      }
    }
    const auto paper = cameras_paper(false);
    CHECK(paper.vis.px_per_deg() == Catch::Approx(40.96).epsilon(1e-12));
    CHECK(paper.tir.px_per_deg() == Catch::Approx(20.48).epsilon(1e-12));
  }

  SECTION("derived focal length") {
    const auto cam = CameraIntrinsics::from_fov(1024, 1024, 25.0, 25.0);
    CHECK(cam.focal_px == Catch::Approx(1024.0 / (2.0 * std::tan(12.5 * M_PI / 180.0))));
  }

  SECTION("non-square pixels rejected") {
    CHECK_THROWS_AS(CameraIntrinsics::from_fov(640, 512, 31.25, 26.0), std::invalid_argument);
  }

  SECTION("project/ray round trip") {
    const auto cam = CameraIntrinsics::from_fov(256, 256, 25.0, 25.0);
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
      const Vec2 px(rng.uniform(1.0, 255.0), rng.uniform(1.0, 255.0));
      const Vec3 dir = cam.ray(px);
      const Vec2 back = cam.project(dir * rng.uniform(1.0, 30.0));
      CHECK((back - px).norm() < 1e-9);
    }
  }
}

TEST_CASE("target model construction") {
  const TargetModel a = build_target_model(123);
  const TargetModel b = build_target_model(123);
  const TargetModel c = build_target_model(124);

  SECTION("deterministic per seed") {
    REQUIRE(a.triangles.size() == b.triangles.size());
    bool same = true;
    for (size_t i = 0; i < a.triangles.size(); ++i) {
      if (a.triangles[i].vis_albedo != b.triangles[i].vis_albedo ||
          a.triangles[i].internal_offset_k != b.triangles[i].internal_offset_k)
        same = false;
    }
    CHECK(same);
    bool differs = false;
    for (size_t i = 0; i < a.triangles.size(); ++i)
      if (a.triangles[i].vis_albedo != c.triangles[i].vis_albedo) differs = true;
    CHECK(differs);
  }

  SECTION("heating texture statistics") {
    double mean = 0.0;
    for (const auto& t : a.triangles) mean += t.internal_offset_k;
    mean /= double(a.triangles.size());
    const double sigma = BuildTargetConfig{}.sigma_internal_k;
    CHECK(std::abs(mean) <= 2.0 * sigma / std::sqrt(double(a.triangles.size())));
  }

  SECTION("every face belongs to exactly one group") {
    for (const auto& t : a.triangles) {
      CHECK(t.group >= 0);
      CHECK(t.group < thermal_group::kCount);
    }
  }

  SECTION("fits the 3 m bounding sphere") { CHECK(a.bounding_radius() <= 3.0); }

  SECTION("each component is watertight") {
    // every directed edge should be matched by its reverse within the group
    std::map<std::array<long, 6>, int> edges;
    auto key = [](const Vec3& p, const Vec3& q) {
      auto r = [](double v) { return std::lround(v * 1e6); };
      return std::array<long, 6>{r(p.x()), r(p.y()), r(p.z()), r(q.x()), r(q.y()), r(q.z())};
    };
    for (const auto& t : a.triangles) {
      edges[key(t.v0, t.v1)]++;
      edges[key(t.v1, t.v2)]++;
      edges[key(t.v2, t.v0)]++;
    }
    for (const auto& [k, count] : edges) {
      std::array<long, 6> rev{k[3], k[4], k[5], k[0], k[1], k[2]};
      auto it = edges.find(rev);
      REQUIRE(it != edges.end());
      CHECK(it->second == count);
    }
  }
}

TEST_CASE("thermal lag model") {
  ThermalConfig cfg;
  cfg.validate();
  ThermalInputs in;
  in.sun_visible = true;
  in.sun_incidence = {0.5, 0.5, 0.5};
  in.earth_albedo = 0.5;
  in.earth_ir = 1.0;
  in.internal = 1.0;

  SECTION("equilibrium is a fixed point") {
    const ThermalState eq = thermal_init(cfg, in);
    const ThermalState out = thermal_step(eq, 100.0, in, cfg);
    for (int g = 0; g < thermal_group::kCount; ++g)
      CHECK(out.temperature_k[g] == Catch::Approx(eq.temperature_k[g]).margin(1e-9));
  }

  SECTION("one time constant covers 63.2% of a step") {
    ThermalState s = thermal_init(cfg, in);
    ThermalInputs dark = in;
    dark.sun_visible = false;
    for (int g = 0; g < thermal_group::kCount; ++g) {
      const double t0 = s.temperature_k[g];
      const double teq = thermal_equilibrium(cfg, dark, g);
      const ThermalState n = thermal_step(s, cfg.tau_s[g], dark, cfg);
      const double moved = (t0 - n.temperature_k[g]) / (t0 - teq);
      CHECK(moved == Catch::Approx(0.632).margin(0.001));
    }
  }

  SECTION("periodic forcing settles to a periodic cycle") {
    const double period = 5553.5;
    const double dt = 10.0;
    ThermalState s = thermal_init(cfg, in);
    ThermalInputs dark = in;
    dark.sun_visible = false;
    dark.earth_albedo = 0.0;
    auto run_period = [&](ThermalState st) {
      std::vector<double> bus;
      const int steps = static_cast<int>(period / dt);
      for (int i = 0; i < steps; ++i) {
        const double phase = double(i) / steps;
        st = thermal_step(st, dt, phase < 0.61 ? in : dark, cfg);
        bus.push_back(st.temperature_k[thermal_group::kBus]);
      }
      return std::pair(st, bus);
    };
    std::vector<double> third, fourth;
    for (int p = 0; p < 4; ++p) {
      auto [next, hist] = run_period(s);
      s = next;
      if (p == 2) third = hist;
      if (p == 3) fourth = hist;
    }
    double max_diff = 0.0;
    for (size_t i = 0; i < third.size(); ++i)
      max_diff = std::max(max_diff, std::abs(third[i] - fourth[i]));
    CHECK(max_diff < 1.0);
  }

  SECTION("panel reacts faster than the bus") {
    CHECK(cfg.tau_s[thermal_group::kPanel] < cfg.tau_s[thermal_group::kBus]);
    ThermalConfig bad = cfg;
    bad.tau_s[thermal_group::kPanel] = bad.tau_s[thermal_group::kBus] + 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  }

  CHECK_THROWS_AS(thermal_step(ThermalState{}, 0.0, in, cfg), std::invalid_argument);
}

namespace {

// one +z-facing square at the origin
TargetModel single_face_model(double albedo, double emissivity, double offset_k = 0.0) {
  TargetModel m;
  const double s = 1.0;
  Triangle t1{Vec3(-s, -s, 0), Vec3(s, -s, 0), Vec3(s, s, 0), albedo, emissivity,
              thermal_group::kBus, offset_k};
  Triangle t2{Vec3(-s, -s, 0), Vec3(s, s, 0), Vec3(-s, s, 0), albedo, emissivity,
              thermal_group::kBus, offset_k};
  m.triangles = {t1, t2};
  return m;
}

Pose overhead_camera() {
  Mat3 R;  // looking down -z from above: camera z -> -z world, x -> +x, y -> +y flip
  R.col(0) = Vec3(1, 0, 0);
  R.col(1) = Vec3(0, -1, 0);
  R.col(2) = Vec3(0, 0, -1);
  return Pose(R, Vec3(0, 0, 5));
}

}  // namespace

TEST_CASE("visible-band rendering") {
  const auto cam = CameraIntrinsics::from_fov(64, 64, 25.0, 25.0);

  SECTION("lambertian extremes on a single face") {
    const TargetModel m = single_face_model(1.0, 0.9);
    const TargetRenderer r(m);
    EnvironmentLight light;
    light.sun_dir = Vec3(0, 0, 1);
    light.k_sun = 1.0;
    light.k_albedo = 0.0;
    const GrayImage img = r.render_vis(overhead_camera(), cam, light);
    CHECK(img.at(32, 32) == Catch::Approx(1.0).margin(1e-12));
    CHECK(img.at(1, 1) == 0.0);  // background

    // tilt the sun 60 degrees: cos term halves
    light.sun_dir = Vec3(std::sin(M_PI / 3), 0, std::cos(M_PI / 3));
    const GrayImage img2 = r.render_vis(overhead_camera(), cam, light);
    CHECK(img2.at(32, 32) == Catch::Approx(0.5).margin(1e-12));
  }

  SECTION("eclipse blanks the frame") {
    const TargetModel m = build_target_model(5);
    const TargetRenderer r(m);
    EnvironmentLight light;
    light.eclipse = true;
    Pose pose(inspector_attitude(Vec3(15, 0, 0), Vec3(0, 0, 1)), Vec3(15, 0, 0));
    const GrayImage img = r.render_vis(pose, cam, light);
    CHECK(img.max_value() == 0.0);
  }

  SECTION("deterministic and foreground rays hit the bounding sphere") {
    const TargetModel m = build_target_model(5);
    const TargetRenderer r(m);
    EnvironmentLight light;
    light.sun_dir = Vec3(1, 0, 0);
    Pose pose(inspector_attitude(Vec3(12, 6, 3), Vec3(0, 0, 1)), Vec3(12, 6, 3));
    const GrayImage a = r.render_vis(pose, cam, light);
    const GrayImage b = r.render_vis(pose, cam, light);
    CHECK(a.data == b.data);
    CHECK(a.max_value() > 0.05);

    const double rad = m.bounding_radius() + 1e-9;
    for (int y = 0; y < cam.height; ++y)
      for (int x = 0; x < cam.width; ++x) {
        if (a.at(x, y) <= 0.0) continue;
        const Vec3 d = pose.R * cam.ray(Vec2(x + 0.5, y + 0.5));
        // closest approach of the ray to the origin
        const double along = -pose.t.dot(d);
        const double dist = (pose.t + along * d).norm();
        CHECK(dist <= rad);
      }
  }
}

TEST_CASE("thermal-band rendering") {
  const auto cam = CameraIntrinsics::from_fov(64, 64, 25.0, 25.0);
  ThermalConfig cfg;

  SECTION("mapping endpoints") {
    const TargetModel m = single_face_model(0.5, 1.0);
    const TargetRenderer r(m);
    ThermalState st;
    st.temperature_k = {cfg.t_max_k, cfg.t_max_k, cfg.t_max_k};
    const GrayImage img = r.render_tir(overhead_camera(), cam, st, cfg);
    CHECK(img.at(32, 32) == Catch::Approx(1.0).margin(1e-12));
    CHECK(img.at(1, 1) == 0.0);
  }

  SECTION("at the cold endpoint only the heating texture remains") {
    const TargetModel warm = single_face_model(0.5, 1.0, 30.0);
    ThermalState st;
    st.temperature_k = {cfg.t_min_k, cfg.t_min_k, cfg.t_min_k};
    const GrayImage img = TargetRenderer(warm).render_tir(overhead_camera(), cam, st, cfg);
    CHECK(img.at(32, 32) ==
          Catch::Approx(30.0 / (cfg.t_max_k - cfg.t_min_k)).margin(1e-12));
    const TargetModel flat = single_face_model(0.5, 1.0, 0.0);
    const GrayImage img0 = TargetRenderer(flat).render_tir(overhead_camera(), cam, st, cfg);
    CHECK(img0.max_value() == 0.0);
  }

  SECTION("stays visible through eclipse with the default config") {
    const TargetModel m = build_target_model(5);
    const TargetRenderer r(m);
    ThermalInputs lit;
    lit.sun_incidence = r.sun_incidence(Vec3(1, 0, 0));
    lit.earth_albedo = 0.5;
    ThermalState st = thermal_init(cfg, lit);
    // cool through a full eclipse arc
    ThermalInputs dark = lit;
    dark.sun_visible = false;
    dark.earth_albedo = 0.0;
    const double eclipse_s = 0.39 * 5553.5;
    for (int i = 0; i < 36; ++i) st = thermal_step(st, eclipse_s / 36, dark, cfg);
    Pose pose(inspector_attitude(Vec3(15, 0, 0), Vec3(0, 0, 1)), Vec3(15, 0, 0));
    const GrayImage img = r.render_tir(pose, cam, st, cfg);
    CHECK(img.max_value() > 0.1);  // above the default mask threshold
  }
}

TEST_CASE("visible-band noise") {
  GrayImage img(1024, 1024, 0.5);

  SECTION("sigma zero is the identity") {
    const GrayImage out = apply_vis_noise(img, 0.0, 9);
    CHECK(out.data == img.data);
  }

  SECTION("sample statistics and determinism") {
    const GrayImage a = apply_vis_noise(img, 0.01, 9);
    const GrayImage b = apply_vis_noise(img, 0.01, 9);
    CHECK(a.data == b.data);
    double mean = 0.0;
    for (double v : a.data) mean += v;
    mean /= double(a.size());
    double var = 0.0;
    for (double v : a.data) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / double(a.size() - 1));
    CHECK(sd >= 0.009);
    CHECK(sd <= 0.011);
  }

  CHECK_THROWS_AS(apply_vis_noise(img, -0.1, 9), std::invalid_argument);
}

TEST_CASE("thermal-band noise") {
  GrayImage img(160, 128, 0.5);

  SECTION("all-zero sigmas are the identity") {
    const GrayImage out = apply_tir_noise(img, 0.0, 0.0, 11);
    CHECK(out.data == img.data);
  }

  SECTION("streak pattern is fixed across frames") {
    const GrayImage f0 = apply_tir_noise(img, 0.004, 0.02, 11, 0);
    const GrayImage f1 = apply_tir_noise(img, 0.004, 0.02, 11, 1);
    // the difference cancels the fixed pattern: column means of the
    // difference behave like averaged white noise
    const double tol = 4.0 * 0.004 * std::sqrt(2.0) / std::sqrt(double(img.height));
    for (int x = 0; x < img.width; ++x) {
      double m = 0.0;
      for (int y = 0; y < img.height; ++y) m += f0.at(x, y) - f1.at(x, y);
      m /= img.height;
      CHECK(std::abs(m) < tol);
    }
  }

  SECTION("column means recover the column offsets") {
    const double sfpn = 0.02, sg = 0.004;
    const GrayImage out = apply_tir_noise(img, sg, sfpn, 11, 0);
    // reference offsets: same deterministic stream as the implementation
    Rng fpn(11, seed_stream::kTirFpn);
    std::vector<double> col(img.width), row(img.height);
    for (double& v : col) v = fpn.gaussian(0.0, sfpn);
    for (double& v : row) v = fpn.gaussian(0.0, sfpn);
    double row_mean = 0.0;
    for (double v : row) row_mean += v;
    row_mean /= img.height;
    double rms = 0.0;
    for (int x = 0; x < img.width; ++x) {
      double m = 0.0;
      for (int y = 0; y < img.height; ++y) m += out.at(x, y);
      m /= img.height;
      const double residual = m - (0.5 + col[x] + row_mean);
      rms += residual * residual;
    }
    rms = std::sqrt(rms / img.width);
    CHECK(rms <= 2.0 * sg / std::sqrt(double(img.height)));
  }
}

TEST_CASE("bloom") {
  SECTION("identity below threshold") {
    GrayImage img(32, 32, 0.3);
    const GrayImage out = apply_bloom(img, 0.8, 2.0);
    CHECK(out.data == img.data);
  }

  SECTION("saturated pixel produces a symmetric additive halo") {
    GrayImage img(33, 33, 0.1);
    img.at(16, 16) = 1.0;
    const GrayImage out = apply_bloom(img, 0.8, 2.0);
    for (size_t i = 0; i < out.size(); ++i) CHECK(out.data[i] >= img.data[i]);
    for (int d = 1; d < 8; ++d) {
      const double right = out.at(16 + d, 16);
      CHECK(out.at(16 - d, 16) == Catch::Approx(right).margin(1e-12));
      CHECK(out.at(16, 16 + d) == Catch::Approx(right).margin(1e-12));
      CHECK(out.at(16, 16 - d) == Catch::Approx(right).margin(1e-12));
    }
    CHECK(out.at(17, 16) > img.at(17, 16));
  }

  CHECK_THROWS_AS(apply_bloom(GrayImage(4, 4), 0.0, 1.0), std::invalid_argument);
}
