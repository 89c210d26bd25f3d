// Acceptance suite. Prints indented detail lines and one summary line per
// criterion:  "A<k> PASS|FAIL  <title>". With arguments, runs only the named
// criteria. Exit status is 0 when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace curveflow;

namespace {

const double pi = std::numbers::pi;

class Report {
 public:
  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    std::printf("    [%s] %s\n", ok ? "ok" : "FAIL", buf);
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }

 private:
  bool ok_ = true;
};

bool within(double v, double lo, double hi) { return v >= lo && v <= hi; }

// --- convergence criteria ---------------------------------------------------

struct OrderBound {
  const char* name;
  double lo, hi;
};

void check_orders(Report& rep, const char* label, const ConvergenceStudy& study, std::vector<OrderBound> bounds) {
  const auto t0 = std::chrono::steady_clock::now();
  const ConvergenceTable table = run_convergence(study);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& row : table.rows) {
    if (row.failure) {
      rep.check(false, "%s N=%d failed: %s", label, row.n, row.failure->message.c_str());
      return;
    }
    std::printf("      N=%4d", row.n);
    for (const auto& b : bounds) {
      const double e = row.errors.at(b.name);
      std::printf("  %s=%.3e", b.name, e);
      if (auto it = row.eoc.find(b.name); it != row.eoc.end()) std::printf(" (%.2f)", it->second);
    }
    std::printf("\n");
  }
  for (const auto& b : bounds) {
    const auto o = table.last_eoc(b.name);
    rep.check(o && within(*o, b.lo, b.hi), "%s last EOC %s = %.3f in [%.2f, %.2f]", label, b.name, o ? *o : NAN, b.lo,
              b.hi);
  }
  std::printf("      (%.2f s)\n", secs);
}

ConvergenceStudy study(Scheme s, CurveKind k, ForceSpec spec, double alpha = 1.0) {
  ConvergenceStudy st;
  st.scheme = s;
  st.kind = k;
  st.spec = spec;
  st.n_list = {16, 32, 64, 128};
  st.tau_rule.coefficient = 0.5;
  st.t_final = 0.25;
  st.alpha = alpha;
  return st;
}

const std::vector<OrderBound> kFdmNodal{{"E1", 1.8, 2.2}, {"E1_L2G", 1.8, 2.2}, {"E1_LinfG", 1.8, 2.2}};
const std::vector<OrderBound> kFdmAll{
    {"E1", 1.8, 2.2}, {"E1_L2G", 1.8, 2.2}, {"E1_LinfG", 1.8, 2.2}, {"E2", 1.7, 2.3}};
const std::vector<OrderBound> kFem{{"E3", 0.75, 1.35}, {"E4", 1.6, 2.4}};

bool a1() {
  Report rep;
  const auto t0 = std::chrono::steady_clock::now();
  check_orders(rep, "ellipse", study(Scheme::Fdm, CurveKind::Ellipse, AreaPreservingSimple{}), kFdmNodal);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.check(secs < 30.0, "runtime %.2f s < 30 s", secs);
  return rep.ok();
}

bool a2() {
  Report rep;
  check_orders(rep, "ellipse", study(Scheme::Fdm, CurveKind::Ellipse, AreaPreservingSimple{}), {{"E2", 1.7, 2.3}});
  return rep.ok();
}

bool a3() {
  Report rep;
  check_orders(rep, "rose ind=3", study(Scheme::Fdm, CurveKind::FourLeafRose, AreaPreservingNonsimple{3}), kFdmAll);
  check_orders(rep, "ellipse beta=pi", study(Scheme::Fdm, CurveKind::Ellipse, PrescribedRate{pi}), kFdmAll);
  return rep.ok();
}

bool a4() {
  Report rep;
  check_orders(rep, "ellipse", study(Scheme::Fem, CurveKind::Ellipse, AreaPreservingSimple{}), kFem);
  return rep.ok();
}

bool a5() {
  Report rep;
  check_orders(rep, "ellipse alpha=1", study(Scheme::FemTm, CurveKind::Ellipse, AreaPreservingSimple{}, 1.0), kFem);
  check_orders(rep, "ellipse alpha=0.5", study(Scheme::FemTm, CurveKind::Ellipse, AreaPreservingSimple{}, 0.5), kFem);
  check_orders(rep, "rose ind=3 alpha=1",
               study(Scheme::FemTm, CurveKind::FourLeafRose, AreaPreservingNonsimple{3}, 1.0), kFem);
  check_orders(rep, "ellipse beta=pi alpha=1", study(Scheme::FemTm, CurveKind::Ellipse, PrescribedRate{pi}, 1.0),
               kFem);
  return rep.ok();
}

// --- evolution criteria -----------------------------------------------------

EvolutionRecord evolve(Scheme s, CurveKind k, ForceSpec spec, int n, double tau, double t_final, double alpha = 1.0) {
  SchemeConfig c;
  c.scheme = s;
  c.kind = k;
  c.spec = spec;
  c.n = n;
  c.tau = tau;
  c.t_final = t_final;
  c.alpha = alpha;
  return run_evolution(c);
}

double max_abs_area_loss(const EvolutionRecord& r) {
  double m = 0.0;
  for (double d : r.area_loss) m = std::max(m, std::abs(d));
  return m;
}

// max_t |A(t) - (A(0) - beta t)| / A(0)
double rate_defect(const EvolutionRecord& r, double beta) {
  double m = 0.0;
  for (std::size_t k = 0; k < r.levels(); ++k) {
    m = std::max(m, std::abs(r.area[k] - (r.area.front() - beta * r.times[k])));
  }
  return m / r.area.front();
}

bool a6() {
  Report rep;
  const Scheme schemes[] = {Scheme::Fdm, Scheme::Fem, Scheme::FemTm};
  struct Case {
    const char* name;
    CurveKind kind;
    ForceSpec spec;
  };
  const Case preserving[] = {{"case 1 flower", CurveKind::Flower, AreaPreservingSimple{}},
                             {"case 2 rose", CurveKind::FourLeafRose, AreaPreservingNonsimple{3}}};
  for (const auto& c : preserving) {
    for (Scheme s : schemes) {
      const auto coarse = evolve(s, c.kind, c.spec, 80, 1.0 / 160, 2.0);
      const auto fine = evolve(s, c.kind, c.spec, 160, 1.0 / 640, 2.0);
      if (!coarse.ok() || !fine.ok()) {
        rep.check(false, "%s %s: run failed", c.name, std::string(to_string(s)).c_str());
        continue;
      }
      const double d0 = max_abs_area_loss(coarse), d1 = max_abs_area_loss(fine);
      rep.check(d0 <= 1e-2, "%s %-6s max|dA| on [0,2] = %.3e <= 1e-2", c.name, std::string(to_string(s)).c_str(), d0);
      rep.check(d1 < d0, "%s %-6s refined (N=160, tau/4) max|dA| = %.3e < %.3e", c.name,
                std::string(to_string(s)).c_str(), d1, d0);
    }
  }
  for (Scheme s : schemes) {
    const auto coarse = evolve(s, CurveKind::Rectangle4x1, PrescribedRate{pi}, 80, 1.0 / 160, 0.5);
    const auto fine = evolve(s, CurveKind::Rectangle4x1, PrescribedRate{pi}, 160, 1.0 / 640, 0.5);
    if (!coarse.ok() || !fine.ok()) {
      rep.check(false, "case 3 rect %s: run failed", std::string(to_string(s)).c_str());
      continue;
    }
    const double d0 = rate_defect(coarse, pi), d1 = rate_defect(fine, pi);
    rep.check(d0 <= 5e-2, "case 3 rect %-6s max|A - (A0 - pi t)|/A0 on [0,0.5] = %.3e <= 5e-2",
              std::string(to_string(s)).c_str(), d0);
    rep.check(d1 < d0, "case 3 rect %-6s refined defect = %.3e < %.3e", std::string(to_string(s)).c_str(), d1, d0);
  }
  return rep.ok();
}

bool a7() {
  Report rep;
  const auto r = evolve(Scheme::FemTm, CurveKind::Flower, AreaPreservingSimple{}, 80, 1.0 / 160, 3.0, 1.0);
  if (!r.ok()) {
    rep.check(false, "alpha=1 run failed: %s", r.failure->message.c_str());
    return false;
  }
  const double psi0 = r.mesh_ratio.front(), psi_t = r.mesh_ratio.back();
  rep.check(psi_t <= 1.2, "Psi(3) = %.5f <= 1.2", psi_t);
  rep.check(psi_t < psi0, "Psi(3) = %.5f < Psi(0) = %.5f", psi_t, psi0);

  const auto r1 = evolve(Scheme::FemTm, CurveKind::Flower, AreaPreservingSimple{}, 80, 1.0 / 160, 1.0, 1.0);
  const auto r01 = evolve(Scheme::FemTm, CurveKind::Flower, AreaPreservingSimple{}, 80, 1.0 / 160, 1.0, 0.1);
  if (!r1.ok() || !r01.ok()) {
    rep.check(false, "t = 1 comparison runs failed");
    return false;
  }
  rep.check(r01.mesh_ratio.back() < r1.mesh_ratio.back(), "Psi(1): alpha=0.1 gives %.5f < alpha=1 gives %.5f",
            r01.mesh_ratio.back(), r1.mesh_ratio.back());
  return rep.ok();
}

// --- exact identities -------------------------------------------------------

bool a8() {
  Report rep;
  std::mt19937_64 rng(20240601);

  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    worst = std::max(worst, oracle::fdm_length_identity_residual(oracle::random_polygon(rng, 3 + i % 40),
                                                                  AreaPreservingSimple{}));
  }
  rep.check(worst <= 1e-10, "(i) FDM length identity, 200 polygons: max relative residual %.2e", worst);

  double w1 = 0.0, w2 = 0.0;
  for (int i = 0; i < 200; ++i) {
    const ForceSpec spec = (i % 3 == 0) ? ForceSpec(PrescribedRate{1.0}) : ForceSpec(AreaPreservingSimple{});
    const auto r = oracle::fem_length_identity_residuals(oracle::random_polygon(rng, 3 + i % 40), spec);
    w1 = std::max(w1, r.first_form);
    w2 = std::max(w2, r.second_form);
  }
  rep.check(w1 <= 1e-10 && w2 <= 1e-10, "(ii) FEM length identity, 200 polygons: residuals %.2e and %.2e", w1, w2);

  double wt = 0.0, wn = 0.0;
  std::uniform_real_distribution<double> al(1e-3, 1.0);
  for (int i = 0; i < 200; ++i) {
    const GridCurve c = oracle::random_polygon(rng, 3 + i % 40);
    const auto t = edge_tangents(c);
    const auto nrm = edge_normals(c);
    const std::size_t n = c.size();
    const double a = al(rng);
    for (std::size_t j = 0; j < n; ++j) {
      const Vec2& prev = t[(j + n - 1) % n];
      const Vec2 nh = averaged_normal(prev, t[j]);
      wt = std::max(wt, std::abs(dot(nh, t[j]) + dot(prev, nh)));
      const Mat2 mi = tangential_weight_inverse(nrm[j], a);
      const Vec2 row{nrm[j].x * mi.a + nrm[j].y * mi.c, nrm[j].x * mi.b + nrm[j].y * mi.d};
      wn = std::max(wn, norm(row - nrm[j]));
    }
  }
  rep.check(wt <= 1e-13, "(iii) half-step normal identity: max residual %.2e <= 1e-13", wt);
  rep.check(wn <= 1e-12, "(iii) n^T M^-1 = n^T: max residual %.2e <= 1e-12", wn);

  std::uniform_real_distribution<double> u(-10, 10);
  std::uniform_int_distribution<std::size_t> sz(4, 64);
  int held = 0;
  for (int i = 0; i < 500; ++i) {
    std::vector<double> g(sz(rng));
    for (auto& v : g) v = u(rng);
    const auto b = h1g_bound_check(GridFunction<double>(g));
    held += b.lhs <= b.rhs * (1 + 1e-12);
  }
  rep.check(held == 500, "(iv) interpolant H1 bound holds on %d / 500 random grid functions", held);

  double es = 0.0, eb = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 3 + i % 62;
    const auto a = oracle::random_dominant_system<double>(rng, n);
    std::vector<double> r(n);
    for (auto& v : r) v = u(rng);
    const auto x = solve_cyclic_tridiag(a, r);
    const auto want = oracle::dense_solve(oracle::dense_from(a), r);
    for (std::size_t k = 0; k < n; ++k) es = std::max(es, std::abs(x[k] - want[k]));

    const auto ab = oracle::random_dominant_system<Mat2>(rng, n);
    std::vector<Vec2> rb(n);
    for (auto& v : rb) v = {u(rng), u(rng)};
    const auto xb = solve_block_cyclic_tridiag(ab, rb);
    eb = std::max(eb, oracle::max_abs_diff(xb, oracle::unflatten(oracle::dense_solve(oracle::dense_from(ab),
                                                                                     oracle::flatten(rb)))));
  }
  rep.check(es <= 1e-11 && eb <= 1e-11, "(v) cyclic solvers vs dense, 1000 systems each: %.2e (scalar), %.2e (block)",
            es, eb);

  int matched = 0;
  double worst_excess = 0.0;
  for (int i = 0; i < 100; ++i) {
    const GridCurve a = (i % 2) ? oracle::random_polygon(rng, 3 + i % 10) : oracle::random_star(rng, 5 + i % 10);
    const GridCurve b = (i % 3) ? oracle::random_polygon(rng, 3 + i % 9) : oracle::random_convex(rng, 4 + i % 9);
    const auto q = oracle::angle_quadrature_distance(a, b, 300);
    const double err = std::abs(manifold_distance(a, b) - q.value);
    matched += err <= q.resolution_bound;
    worst_excess = std::max(worst_excess, err / q.resolution_bound);
  }
  rep.check(matched == 100, "(vi) manifold distance vs winding grid: %d / 100 pairs within resolution (worst %.2f of bound)",
            matched, worst_excess);

  int sym = 0, tri = 0;
  std::uniform_real_distribution<double> c(-0.5, 0.5);
  for (int i = 0; i < 100; ++i) {
    const GridCurve a = oracle::random_polygon(rng, 3 + i % 12);
    const GridCurve b = oracle::random_polygon(rng, 3 + i % 13);
    sym += manifold_distance(a, b) == manifold_distance(b, a);
    const GridCurve p = oracle::random_star(rng, 5 + i % 10, {c(rng), c(rng)});
    const GridCurve q = oracle::random_star(rng, 5 + i % 11, {c(rng), c(rng)});
    const GridCurve r = oracle::random_star(rng, 5 + i % 12, {c(rng), c(rng)});
    tri += manifold_distance(p, r) <= manifold_distance(p, q) + manifold_distance(q, r) + 1e-9;
  }
  rep.check(sym == 100, "(vi) exact symmetry on %d / 100 pairs", sym);
  rep.check(tri == 100, "(vi) triangle inequality on %d / 100 triples", tri);
  return rep.ok();
}

// --- step checks ------------------------------------------------------------

bool a9() {
  Report rep;
  std::mt19937_64 rng(99);
  std::vector<GridCurve> inputs{sample_curve(CurveKind::Ellipse, 8), sample_curve(CurveKind::Flower, 8)};
  for (int i = 0; i < 20; ++i) inputs.push_back(oracle::random_star(rng, 8));
  const ForceSpec spec = AreaPreservingSimple{};
  double ef = 0.0, ee = 0.0, et = 0.0;
  for (const auto& c : inputs) {
    for (double tau : {1e-3, 1e-2}) {
      ef = std::max(ef, oracle::max_abs_diff(fdm_step(c, tau, spec).curve_next, oracle::fdm_step_dense(c, tau, 2 * pi)));
      ee = std::max(ee, oracle::max_abs_diff(fem_step(c, tau, spec).curve_next, oracle::fem_step_dense(c, tau, 2 * pi)));
      for (double a : {1.0, 0.5}) {
        et = std::max(et, oracle::max_abs_diff(fem_tm_step(c, tau, spec, TangentialParams(a)).curve_next,
                                               oracle::fem_tm_step_dense(c, tau, 2 * pi, a)));
      }
    }
  }
  rep.check(ef <= 1e-11, "FDM step vs dense assembly, N=8: %.2e", ef);
  rep.check(ee <= 1e-11, "FEM step vs dense assembly, N=8: %.2e", ee);
  rep.check(et <= 1e-11, "FEM-TM step vs dense assembly, N=8: %.2e", et);

  const GridCurve c = sample_curve(CurveKind::Ellipse, 32);
  const double tau = 1e-4;
  const double rf = oracle::richardson_ratio(c, fdm_velocity(c, spec), tau,
                                             [&](double t) { return fdm_step(c, t, spec).curve_next; });
  const double re = oracle::richardson_ratio(c, fem_velocity(c, spec), tau,
                                             [&](double t) { return fem_step(c, t, spec).curve_next; });
  const TangentialParams p(0.5);
  const double rt = oracle::richardson_ratio(c, fem_tm_velocity(c, spec, p), tau,
                                             [&](double t) { return fem_tm_step(c, t, spec, p).curve_next; });
  rep.check(within(rf, 3.5, 4.5), "FDM Richardson defect ratio %.3f in [3.5, 4.5]", rf);
  rep.check(within(re, 3.5, 4.5), "FEM Richardson defect ratio %.3f in [3.5, 4.5]", re);
  rep.check(within(rt, 3.5, 4.5), "FEM-TM Richardson defect ratio %.3f in [3.5, 4.5]", rt);
  return rep.ok();
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"A1", "FDM second order in H1_G, L2_G, Linf_G (ellipse)", a1},
      {"A2", "FDM manifold distance order (ellipse)", a2},
      {"A3", "FDM orders on the rose and the prescribed-rate ellipse", a3},
      {"A4", "FEM first order in H1, second in manifold distance", a4},
      {"A5", "FEM-TM orders", a5},
      {"A6", "area behavior", a6},
      {"A7", "FEM-TM equidistribution", a7},
      {"A8", "exact identities", a8},
      {"A9", "steps vs dense oracle and Richardson ratios", a9},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  int failures = 0, ran = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    ++ran;
    std::printf("%s  %s\n", c.id, c.title);
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      std::printf("    [FAIL] exception: %s\n", e.what());
    }
    std::printf("%s %s  %s\n", c.id, ok ? "PASS" : "FAIL", c.title);
    std::fflush(stdout);
    failures += !ok;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion matches; known ids are A1..A9\n");
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
