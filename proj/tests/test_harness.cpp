#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "curveflow/curveflow.hpp"

using namespace curveflow;
using Catch::Approx;

namespace {

SchemeConfig evolution(Scheme s, CurveKind k, ForceSpec spec, double t_final) {
  SchemeConfig c;
  c.scheme = s;
  c.kind = k;
  c.spec = spec;
  c.n = 80;
  c.tau = 1.0 / 160.0;
  c.t_final = t_final;
  return c;
}

}  // namespace

TEST_CASE("step counts") {
  CHECK(step_count(2.0, 1.0 / 160.0) == 320);
  CHECK(step_count(2.0, 0.00625) == 320);
  CHECK(step_count(0.25, 0.25) == 1);
  CHECK_THROWS_AS(step_count(1.0, 0.3), InvalidArgument);
  CHECK_THROWS_AS(step_count(0.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(step_count(1.0, -0.1), InvalidArgument);
}

TEST_CASE("config validation") {
  SchemeConfig c;
  CHECK_NOTHROW(c.validate());
  c.n = 2;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = SchemeConfig{};
  c.scheme = Scheme::FemTm;
  c.alpha = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c = SchemeConfig{};
  c.snapshot_times = {0.5, 3.0};
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("experimental orders") {
  CHECK(eoc({4e-3, 1e-3}).front() == Approx(2.0).epsilon(1e-14));
  CHECK(eoc({4e-3, 2e-3}).front() == Approx(1.0).epsilon(1e-14));
  CHECK(eoc({1.0, 0.25}, 2.0).front() == Approx(2.0).epsilon(1e-14));
  CHECK(eoc({1.0, 0.5}, 2.0).front() == Approx(1.0).epsilon(1e-14));
  const auto o = eoc({1e-2, 2.5e-3, 6.25e-4}, 2.0);
  REQUIRE(o.size() == 2);
  CHECK(o[0] == Approx(2.0).epsilon(1e-13));
  CHECK(o[1] == Approx(2.0).epsilon(1e-13));
  CHECK(eoc({1.0, 1.0 / 27}, 3.0).front() == Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(eoc({1.0, 0.0}), NonpositiveError);
  CHECK_THROWS_AS(eoc({-1.0, 1.0}), NonpositiveError);
  CHECK_THROWS_AS(eoc({1.0, 0.5}, 1.0), InvalidArgument);
}

TEST_CASE("a one-step run records two levels") {
  for (Scheme s : {Scheme::Fdm, Scheme::Fem, Scheme::FemTm}) {
    SchemeConfig c;
    c.scheme = s;
    c.n = 20;
    c.tau = 0.01;
    c.t_final = 0.01;
    const auto r = run_evolution(c);
    CHECK(r.ok());
    CHECK(r.levels() == 2);
    CHECK(r.perimeter.size() == 2);
    CHECK(r.area_loss.front() == 0.0);
  }
}

TEST_CASE("rectangle area decreases under the prescribed rate") {
  const auto r = run_evolution(evolution(Scheme::Fem, CurveKind::Rectangle4x1, PrescribedRate{std::numbers::pi}, 1.0));
  REQUIRE(r.ok());
  for (std::size_t k = 1; k < r.levels(); ++k) CHECK(r.area[k] < r.area[k - 1]);
  CHECK(std::abs(r.area.back() - (4.0 - std::numbers::pi)) <= 0.05 * r.area.front());
}

TEST_CASE("flower perimeter decreases") {
  for (Scheme s : {Scheme::Fdm, Scheme::Fem, Scheme::FemTm}) {
    CAPTURE(to_string(s));
    const auto r = run_evolution(evolution(s, CurveKind::Flower, AreaPreservingSimple{}, 2.0));
    REQUIRE(r.ok());
    REQUIRE(r.levels() == 321);
    for (std::size_t k = 1; k < r.levels(); ++k) {
      if (r.times[k] > 0.9 && s == Scheme::Fdm) break;
      CHECK(r.perimeter[k] < r.perimeter[k - 1]);
    }
    CHECK(r.perimeter.back() < 0.7 * r.perimeter.front());
    for (double l : r.perimeter) CHECK(l > 0.0);
  }
}

TEST_CASE("finite difference regular polygons expand slowly at equilibrium") {
  // On a regular N-gon the curvature term is 1/R and the forcing is
  // x / (R sin x), x = pi/N: the polygon grows at (x / sin x - 1) / R. This is
  // the late-time drift of the FDM perimeter near the limiting circle.
  const int n = 80;
  const double r0 = 1.5, x = std::numbers::pi / n;
  std::vector<Vec2> p;
  for (int j = 0; j < n; ++j) p.push_back({r0 * std::cos(2 * x * j), r0 * std::sin(2 * x * j)});
  GridCurve c(p);
  const double tau = 1.0 / 160.0;
  for (int k = 0; k < 16; ++k) c = fdm_step(c, tau, AreaPreservingSimple{}).curve_next;
  const double r1 = norm(c[0]);
  const double rate = (x / std::sin(x) - 1.0) / r0;
  CHECK(r1 > r0);
  CHECK((r1 - r0) / (16 * tau) == Approx(rate).epsilon(0.02));
}

TEST_CASE("snapshots and failures") {
  SchemeConfig c = evolution(Scheme::FemTm, CurveKind::Ellipse, AreaPreservingSimple{}, 0.5);
  c.snapshot_times = {0.0, 0.25, 0.5};
  const auto r = run_evolution(c);
  REQUIRE(r.snapshots.size() == 3);
  CHECK(r.snapshots[1].level == 40);
  CHECK(r.snapshots[2].time == 0.5);

  // The rectangle loses all its area before t = 4/pi; the run must stop with
  // a diagnostic and keep the levels computed so far.
  const auto bad = run_evolution(evolution(Scheme::Fdm, CurveKind::Rectangle4x1, PrescribedRate{std::numbers::pi}, 2.0));
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.failure->level == bad.levels());
  CHECK(bad.levels() < 321);
  CHECK_FALSE(bad.failure->kind.empty());
}

TEST_CASE("runs are deterministic") {
  const auto c = evolution(Scheme::Fem, CurveKind::Flower, AreaPreservingSimple{}, 0.5);
  const auto a = run_evolution(c), b = run_evolution(c);
  CHECK(a.perimeter == b.perimeter);
  CHECK(a.area == b.area);
  CHECK(a.mesh_ratio == b.mesh_ratio);
}

TEST_CASE("convergence table for the finite difference scheme") {
  ConvergenceStudy s;
  const auto t = run_convergence(s);
  REQUIRE(t.rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK_FALSE(t.rows[i].failure);
    CHECK(t.rows[i].errors.count("E1") == 1);
    CHECK(t.rows[i].errors.count("E3") == 0);
    if (i > 0) {
      CHECK(t.rows[i].n == 2 * t.rows[i - 1].n);
      CHECK(t.rows[i].tau == Approx(t.rows[i - 1].tau / 4).epsilon(1e-14));
      CHECK(t.rows[i].errors.at("E1") < t.rows[i - 1].errors.at("E1"));
    }
  }
  CHECK(t.rows[0].tau == Approx(1.0 / 16).epsilon(1e-14));
  CHECK(*t.last_eoc("E1") > 1.8);
  CHECK_FALSE(t.last_eoc("E3").has_value());

  ConvergenceStudy serial = s;
  serial.parallel = false;
  const auto u = run_convergence(serial);
  for (std::size_t i = 0; i < 4; ++i) CHECK(u.rows[i].errors == t.rows[i].errors);
}

TEST_CASE("convergence table for the finite element schemes") {
  ConvergenceStudy s;
  s.scheme = Scheme::Fem;
  s.n_list = {16, 32, 64};
  const auto t = run_convergence(s);
  for (const auto& r : t.rows) {
    CHECK(r.errors.count("E3") == 1);
    CHECK(r.errors.count("E4") == 1);
    CHECK(r.errors.count("E1") == 0);
  }
  CHECK(t.last_eoc("E3").has_value());
}

TEST_CASE("convergence study validation") {
  ConvergenceStudy s;
  s.n_list = {16, 30};
  CHECK_THROWS_AS(run_convergence(s), InvalidArgument);
  s.n_list = {};
  CHECK_THROWS_AS(run_convergence(s), InvalidArgument);
  s = ConvergenceStudy{};
  s.scheme = Scheme::FemTm;
  s.alpha = 2.0;
  CHECK_THROWS_AS(run_convergence(s), InvalidArgument);
  CHECK(error_names().size() == 6);
}
