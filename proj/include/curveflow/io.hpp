#pragma once

// CSV and JSON serialization of evolution records, convergence tables and
// run manifests. Reals are written with 17 significant digits so that they
// parse back to the same double.
//
//   quantities.csv   t,L,A,dA_rel,Psi
//   snapshots.csv    t,j,x,y
//   convergence.csv  N,h,tau,E1,E2,E3,E4,EOC_E1,EOC_E2,EOC_E3,EOC_E4,
//                    E1_L2G,E1_LinfG,EOC_E1_L2G,EOC_E1_LinfG

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "curveflow/harness.hpp"
#include "curveflow/version.hpp"

namespace curveflow::io {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_quantities_csv(std::ostream& os, const EvolutionRecord& rec) {
  os << "t,L,A,dA_rel,Psi\n";
  for (std::size_t k = 0; k < rec.levels(); ++k) {
    os << format_real(rec.times[k]) << ',' << format_real(rec.perimeter[k]) << ',' << format_real(rec.area[k]) << ','
       << format_real(rec.area_loss[k]) << ',' << format_real(rec.mesh_ratio[k]) << '\n';
  }
}

inline void write_snapshots_csv(std::ostream& os, const std::vector<Snapshot>& snaps) {
  os << "t,j,x,y\n";
  for (const auto& s : snaps) {
    for (std::size_t j = 0; j < s.curve.size(); ++j) {
      const Vec2& p = s.curve[static_cast<std::ptrdiff_t>(j)];
      os << format_real(s.time) << ',' << j << ',' << format_real(p.x) << ',' << format_real(p.y) << '\n';
    }
  }
}

/// Parses snapshots.csv back into curves, one per distinct time, in file order.
inline std::vector<std::pair<double, std::vector<Vec2>>> read_snapshots_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "t,j,x,y") throw InvalidArgument("snapshots CSV header mismatch");
  std::vector<std::pair<double, std::vector<Vec2>>> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string f[4];
    for (auto& cell : f) {
      if (!std::getline(row, cell, ',')) throw InvalidArgument("malformed snapshots row: " + line);
    }
    const double t = std::stod(f[0]);
    const std::size_t j = std::stoul(f[1]);
    if (out.empty() || out.back().first != t || j == 0) out.push_back({t, {}});
    if (j != out.back().second.size()) throw InvalidArgument("snapshot vertex index out of sequence: " + line);
    out.back().second.push_back({std::stod(f[2]), std::stod(f[3])});
  }
  return out;
}

inline void write_convergence_csv(std::ostream& os, const ConvergenceTable& table) {
  const std::vector<std::string> cols{"E1", "E2", "E3", "E4"};
  const std::vector<std::string> extra{"E1_L2G", "E1_LinfG"};
  os << "N,h,tau";
  for (const auto& c : cols) os << ',' << c;
  for (const auto& c : cols) os << ",EOC_" << c;
  for (const auto& c : extra) os << ',' << c;
  for (const auto& c : extra) os << ",EOC_" << c;
  os << '\n';
  auto cell = [&](const std::map<std::string, double>& m, const std::string& k) {
    os << ',';
    if (auto it = m.find(k); it != m.end()) os << format_real(it->second);
  };
  for (const auto& r : table.rows) {
    os << r.n << ',' << format_real(r.h) << ',' << format_real(r.tau);
    for (const auto& c : cols) cell(r.errors, c);
    for (const auto& c : cols) cell(r.eoc, c);
    for (const auto& c : extra) cell(r.errors, c);
    for (const auto& c : extra) cell(r.eoc, c);
    os << '\n';
  }
}

inline nlohmann::json to_json(const ForceSpec& spec) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, AreaPreservingSimple>) {
          return {{"flow", "ap"}};
        } else if constexpr (std::is_same_v<T, AreaPreservingNonsimple>) {
          return {{"flow", "ap-ind"}, {"ind", v.ind}};
        } else {
          return {{"flow", "rate"}, {"beta", v.beta}};
        }
      },
      spec.variant());
}

inline ForceSpec force_spec_from_json(const nlohmann::json& j) {
  const auto flow = j.at("flow").get<std::string>();
  if (flow == "ap") return AreaPreservingSimple{};
  if (flow == "ap-ind") return AreaPreservingNonsimple{j.at("ind").get<int>()};
  if (flow == "rate") return PrescribedRate{j.at("beta").get<double>()};
  throw InvalidArgument("unknown flow '" + flow + "'");
}

inline nlohmann::json to_json(const SchemeConfig& c) {
  return {{"scheme", to_string(c.scheme)}, {"case", to_string(c.kind)}, {"force", to_json(c.spec)},
          {"n", c.n},                      {"tau", c.tau},              {"tfinal", c.t_final},
          {"alpha", c.alpha},              {"snapshots", c.snapshot_times}};
}

inline SchemeConfig scheme_config_from_json(const nlohmann::json& j) {
  SchemeConfig c;
  c.scheme = scheme_from_string(j.at("scheme").get<std::string>());
  c.kind = curve_kind_from_string(j.at("case").get<std::string>());
  c.spec = force_spec_from_json(j.at("force"));
  c.n = j.at("n").get<int>();
  c.tau = j.at("tau").get<double>();
  c.t_final = j.at("tfinal").get<double>();
  c.alpha = j.at("alpha").get<double>();
  c.snapshot_times = j.at("snapshots").get<std::vector<double>>();
  return c;
}

inline nlohmann::json to_json(const ConvergenceStudy& s) {
  return {{"scheme", to_string(s.scheme)}, {"case", to_string(s.kind)},      {"force", to_json(s.spec)},
          {"n_list", s.n_list},            {"tau_coef", s.tau_rule.coefficient}, {"tfinal", s.t_final},
          {"alpha", s.alpha}};
}

inline ConvergenceStudy convergence_study_from_json(const nlohmann::json& j) {
  ConvergenceStudy s;
  s.scheme = scheme_from_string(j.at("scheme").get<std::string>());
  s.kind = curve_kind_from_string(j.at("case").get<std::string>());
  s.spec = force_spec_from_json(j.at("force"));
  s.n_list = j.at("n_list").get<std::vector<int>>();
  s.tau_rule.coefficient = j.at("tau_coef").get<double>();
  s.t_final = j.at("tfinal").get<double>();
  s.alpha = j.at("alpha").get<double>();
  return s;
}

/// Description of one CLI run, written next to its outputs.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::vector<std::string> outputs;
  double wall_seconds = 0.0;
  std::optional<StepFailure> failure;

  nlohmann::json to_json() const {
    nlohmann::json j{{"command", command},
                     {"version", std::string(kVersion)},
                     {"config", config},
                     {"outputs", outputs},
                     {"wall_seconds", wall_seconds}};
    if (failure) {
      j["failure"] = {{"level", failure->level}, {"kind", failure->kind}, {"message", failure->message}};
    }
    return j;
  }
};

}  // namespace curveflow::io
