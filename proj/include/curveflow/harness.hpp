#pragma once

// Evolution runs (time series of perimeter, area and mesh ratio) and
// self-refinement convergence studies.
//
// A convergence row compares the run at (h, tau) with the same scheme at
// (h/2, tau/4): coarse level k is matched with fine level 4k, the fine curve
// being read on the coarse grid through its even vertices.

#include <cmath>
#include <cstddef>
#include <future>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "curveflow/curves.hpp"
#include "curveflow/errors.hpp"
#include "curveflow/forcing.hpp"
#include "curveflow/geometry.hpp"
#include "curveflow/manifold_distance.hpp"
#include "curveflow/norms.hpp"
#include "curveflow/schemes.hpp"

namespace curveflow {

/// Relative slack allowed when checking that T / tau is an integer.
inline constexpr double kStepCountTolerance = 1e-9;

inline std::size_t step_count(double t_final, double tau) {
  if (!(t_final > 0.0) || !(tau > 0.0)) throw InvalidArgument("final time and time step must be positive");
  const double ratio = t_final / tau;
  const double m = std::round(ratio);
  if (m < 1.0 || std::abs(ratio - m) > kStepCountTolerance * std::max(1.0, ratio)) {
    throw InvalidArgument("final time " + std::to_string(t_final) + " is not an integer multiple of tau " +
                          std::to_string(tau));
  }
  return static_cast<std::size_t>(m);
}

struct SchemeConfig {
  Scheme scheme = Scheme::Fdm;
  CurveKind kind = CurveKind::Ellipse;
  ForceSpec spec{};
  int n = 80;
  double tau = 1.0 / 160.0;
  double t_final = 2.0;
  double alpha = 1.0;
  std::vector<double> snapshot_times;

  void validate() const {
    if (n < 3) throw InvalidArgument("N must be at least 3");
    (void)step_count(t_final, tau);
    if (scheme == Scheme::FemTm) (void)TangentialParams(alpha);
    for (double t : snapshot_times) {
      if (!(t >= 0.0 && t <= t_final * (1.0 + kStepCountTolerance))) {
        throw InvalidArgument("snapshot time " + std::to_string(t) + " outside [0, T]");
      }
    }
  }

  std::size_t steps() const { return step_count(t_final, tau); }

  friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

/// Where and why a trajectory stopped early.
struct StepFailure {
  std::size_t level = 0;  // the level that could not be computed
  std::string kind;
  std::string message;
};

inline std::string error_kind(const Error& e) {
  if (dynamic_cast<const CuspError*>(&e)) return "CuspError";
  if (dynamic_cast<const MeshDegenerate*>(&e)) return "MeshDegenerate";
  if (dynamic_cast<const SingularSystem*>(&e)) return "SingularSystem";
  if (dynamic_cast<const NonpositivePerimeter*>(&e)) return "NonpositivePerimeter";
  if (dynamic_cast<const DegenerateInput*>(&e)) return "DegenerateInput";
  if (dynamic_cast<const NumericalDegeneracy*>(&e)) return "NumericalDegeneracy";
  return "Error";
}

struct Snapshot {
  double time = 0.0;
  std::size_t level = 0;
  GridCurve curve;
};

struct EvolutionRecord {
  std::vector<double> times;
  std::vector<double> perimeter;
  std::vector<double> area;
  std::vector<double> area_loss;  // (A^k - A^0) / A^0
  std::vector<double> mesh_ratio;
  std::vector<Snapshot> snapshots;
  std::size_t non_dominant_steps = 0;
  std::optional<StepFailure> failure;

  std::size_t levels() const { return times.size(); }
  bool ok() const { return !failure.has_value(); }
};

namespace detail {

inline void record_level(EvolutionRecord& rec, double t, const GridCurve& curve) {
  const double a = signed_area(curve);
  rec.times.push_back(t);
  rec.perimeter.push_back(perimeter(curve));
  rec.area.push_back(a);
  const double a0 = rec.area.front();
  rec.area_loss.push_back(a0 == 0.0 ? 0.0 : (a - a0) / a0);
  rec.mesh_ratio.push_back(mesh_ratio(curve));
}

}  // namespace detail

/// Runs T / tau steps from the sampled initial curve and records every level.
/// A failing step ends the run; the record then holds the levels computed so
/// far and `failure` names the level that failed.
inline EvolutionRecord run_evolution(const SchemeConfig& config) {
  config.validate();
  const std::size_t m = config.steps();

  std::vector<std::size_t> snap_levels;
  for (double t : config.snapshot_times) {
    snap_levels.push_back(std::min(m, static_cast<std::size_t>(std::llround(t / config.tau))));
  }

  EvolutionRecord rec;
  GridCurve curve = sample_curve(config.kind, config.n);
  auto take_snapshots = [&](std::size_t k, double t) {
    for (std::size_t s = 0; s < snap_levels.size(); ++s) {
      if (snap_levels[s] == k) rec.snapshots.push_back({t, k, curve});
    }
  };
  detail::record_level(rec, 0.0, curve);
  take_snapshots(0, 0.0);

  for (std::size_t k = 1; k <= m; ++k) {
    try {
      StepReport step = advance(config.scheme, curve, config.tau, config.spec, config.alpha);
      if (!step.diagonally_dominant) ++rec.non_dominant_steps;
      curve = std::move(step.curve_next);
    } catch (const Error& e) {
      rec.failure = StepFailure{k, error_kind(e), e.what()};
      break;
    }
    const double t = static_cast<double>(k) * config.tau;
    detail::record_level(rec, t, curve);
    take_snapshots(k, t);
  }
  return rec;
}

/// Experimental orders log(e_i / e_{i+1}) / log(ratio).
inline std::vector<double> eoc(const std::vector<double>& errors, double ratio = 2.0) {
  if (!(ratio > 1.0)) throw InvalidArgument("refinement ratio must exceed 1");
  for (double e : errors) {
    if (!(e > 0.0)) throw NonpositiveError("EOC needs positive errors, got " + std::to_string(e));
  }
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) out.push_back(std::log(errors[i] / errors[i + 1]) / std::log(ratio));
  return out;
}

/// tau(N) = T / m(N) with m(N_min) = ceil(T / (coefficient h^2)) and m
/// multiplied by 4 at each doubling of N.
struct TimeStepRule {
  double coefficient = 0.5;
};

struct ConvergenceStudy {
  Scheme scheme = Scheme::Fdm;
  CurveKind kind = CurveKind::Ellipse;
  ForceSpec spec{};
  std::vector<int> n_list{16, 32, 64, 128};
  TimeStepRule tau_rule{};
  double t_final = 0.25;
  double alpha = 1.0;
  bool parallel = true;

  friend bool operator==(const ConvergenceStudy& a, const ConvergenceStudy& b) {
    return a.scheme == b.scheme && a.kind == b.kind && a.spec == b.spec && a.n_list == b.n_list &&
           a.tau_rule.coefficient == b.tau_rule.coefficient && a.t_final == b.t_final && a.alpha == b.alpha;
  }
};

/// Error names, in table order. FDM fills E1, E2 and the two nodal variants;
/// FEM and FEM-TM fill E3 and E4.
inline const std::vector<std::string>& error_names() {
  static const std::vector<std::string> names{"E1", "E2", "E3", "E4", "E1_L2G", "E1_LinfG"};
  return names;
}

struct ConvergenceRow {
  int n = 0;
  double h = 0.0;
  double tau = 0.0;
  std::size_t steps = 0;
  std::map<std::string, double> errors;
  /// Order against the previous row, per error name.
  std::map<std::string, double> eoc;
  std::optional<StepFailure> failure;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;

  /// Order of `name` between the last two rows that both carry it.
  std::optional<double> last_eoc(const std::string& name) const {
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
      if (auto e = it->eoc.find(name); e != it->eoc.end()) return e->second;
    }
    return std::nullopt;
  }
};

namespace detail {

inline ConvergenceRow convergence_row(const ConvergenceStudy& study, int n, std::size_t m) {
  ConvergenceRow row;
  row.n = n;
  row.h = 2.0 * std::numbers::pi / n;
  row.tau = study.t_final / static_cast<double>(m);
  row.steps = m;
  const double tau_fine = row.tau / 4.0;

  std::size_t level = 0;
  try {
    std::vector<GridCurve> coarse;
    coarse.reserve(m + 1);
    coarse.push_back(sample_curve(study.kind, n));
    for (level = 1; level <= m; ++level) {
      coarse.push_back(advance(study.scheme, coarse.back(), row.tau, study.spec, study.alpha).curve_next);
    }

    const bool fdm = study.scheme == Scheme::Fdm;
    double e_h1 = 0.0, e_l2 = 0.0, e_inf = 0.0, e_pl = 0.0;
    GridCurve fine = sample_curve(study.kind, 2 * n);
    for (std::size_t s = 1; s <= 4 * m; ++s) {
      level = s;
      fine = advance(study.scheme, fine, tau_fine, study.spec, study.alpha).curve_next;
      if (s % 4 != 0) continue;
      const GridCurve& c = coarse[s / 4];
      if (fdm) {
        const auto diff = nodal_difference(c, fine);
        e_h1 = std::max(e_h1, grid_h1(diff));
        e_l2 = std::max(e_l2, grid_l2(diff));
        e_inf = std::max(e_inf, grid_linf(diff));
      } else {
        e_pl = std::max(e_pl, pl_h1_diff(c, fine));
      }
    }
    const double md = manifold_distance(coarse.back(), fine);
    if (fdm) {
      row.errors = {{"E1", e_h1}, {"E2", md}, {"E1_L2G", e_l2}, {"E1_LinfG", e_inf}};
    } else {
      row.errors = {{"E3", e_pl}, {"E4", md}};
    }
  } catch (const Error& e) {
    row.errors.clear();
    row.failure = StepFailure{level, error_kind(e), e.what()};
  }
  return row;
}

}  // namespace detail

inline ConvergenceTable run_convergence(const ConvergenceStudy& study) {
  if (study.n_list.empty()) throw InvalidArgument("empty N list");
  for (std::size_t i = 0; i < study.n_list.size(); ++i) {
    if (study.n_list[i] < 3) throw InvalidArgument("N must be at least 3");
    if (i > 0 && study.n_list[i] != 2 * study.n_list[i - 1]) throw InvalidArgument("N list must double row to row");
  }
  if (!(study.tau_rule.coefficient > 0.0) || !(study.t_final > 0.0)) {
    throw InvalidArgument("time step coefficient and final time must be positive");
  }
  if (study.scheme == Scheme::FemTm) (void)TangentialParams(study.alpha);

  const double h0 = 2.0 * std::numbers::pi / study.n_list.front();
  std::size_t m = static_cast<std::size_t>(std::ceil(study.t_final / (study.tau_rule.coefficient * h0 * h0) - 1e-9));
  m = std::max<std::size_t>(m, 1);

  ConvergenceTable table;
  std::vector<std::future<ConvergenceRow>> jobs;
  for (int n : study.n_list) {
    const auto launch = study.parallel ? std::launch::async : std::launch::deferred;
    jobs.push_back(std::async(launch, [&study, n, m] { return detail::convergence_row(study, n, m); }));
    m *= 4;
  }
  for (auto& j : jobs) table.rows.push_back(j.get());

  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    auto& prev = table.rows[i - 1];
    auto& cur = table.rows[i];
    if (prev.failure || cur.failure) continue;
    for (const auto& [name, e] : cur.errors) {
      auto p = prev.errors.find(name);
      if (p == prev.errors.end() || !(p->second > 0.0) || !(e > 0.0)) continue;
      cur.eoc[name] = eoc({p->second, e}, 2.0).front();
    }
  }
  return table;
}

}  // namespace curveflow
