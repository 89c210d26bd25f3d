// Command-line driver: `evolve` runs one trajectory, `converge` runs a
// self-refinement study. Exit codes: 0 success, 1 numerical failure, 2 usage.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curveflow/curveflow.hpp"

namespace fs = std::filesystem;
using namespace curveflow;

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::string scheme = "fdm";
  std::string kind = "ellipse";
  std::string flow = "ap";
  int ind = 0;
  double beta = 0.0;
  double alpha = 1.0;
  std::string out = "curveflow-out";
  long seed = 0;

  CLI::Option* ind_opt = nullptr;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;

  void add_to(CLI::App& app) {
    app.add_option("--scheme", scheme, "Scheme")->check(CLI::IsMember({"fdm", "fem", "fem-tm"}))->capture_default_str();
    app.add_option("--case", kind, "Initial curve")
        ->check(CLI::IsMember({"ellipse", "rose", "flower", "rect"}))
        ->capture_default_str();
    app.add_option("--flow", flow, "Forcing: ap, ap-ind (needs --ind) or rate (needs --beta)")
        ->check(CLI::IsMember({"ap", "ap-ind", "rate"}))
        ->capture_default_str();
    ind_opt = app.add_option("--ind", ind, "Rotation index for ap-ind");
    beta_opt = app.add_option("--beta", beta, "Area decay rate for rate");
    alpha_opt = app.add_option("--alpha", alpha, "Tangential weight in (0,1], fem-tm only")->capture_default_str();
    app.add_option("--out", out, "Output directory")->capture_default_str();
    app.add_option("--seed", seed, "Reserved; all computations are deterministic");
  }

  ForceSpec force() const {
    if (flow != "ap-ind" && ind_opt->count() > 0) throw UsageError("--ind is only valid with --flow ap-ind");
    if (flow != "rate" && beta_opt->count() > 0) throw UsageError("--beta is only valid with --flow rate");
    if (flow == "ap") return AreaPreservingSimple{};
    if (flow == "ap-ind") {
      if (ind_opt->count() == 0) throw UsageError("--flow ap-ind requires --ind");
      if (ind == 0) throw UsageError("--ind must be nonzero");
      return AreaPreservingNonsimple{ind};
    }
    if (beta_opt->count() == 0) throw UsageError("--flow rate requires --beta");
    return PrescribedRate{beta};
  }

  Scheme parsed_scheme() const {
    const Scheme s = scheme_from_string(scheme);
    if (s != Scheme::FemTm && alpha_opt->count() > 0) throw UsageError("--alpha is only valid with --scheme fem-tm");
    if (s == Scheme::FemTm && !(alpha > 0.0 && alpha <= 1.0)) throw UsageError("--alpha must lie in (0, 1]");
    return s;
  }
};

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad snapshot time '" + item + "'");
    }
  }
  return out;
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw std::runtime_error("cannot create " + dir + ": " + ec.message());
  return p;
}

template <class Writer>
std::string write_file(const fs::path& path, Writer&& w) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  w(os);
  if (!os) throw std::runtime_error("write failed for " + path.string());
  return path.string();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_evolve(const CommonFlags& flags, int n, double tau, double t_final, const std::string& snapshots,
               const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  SchemeConfig config;
  try {
    config.scheme = flags.parsed_scheme();
    config.kind = curve_kind_from_string(flags.kind);
    config.spec = flags.force();
    config.n = n;
    config.tau = tau;
    config.t_final = t_final;
    config.alpha = flags.alpha;
    config.snapshot_times = snapshots.empty() ? std::vector<double>{0.0, t_final} : parse_times(snapshots);
    config.validate();
    (void)sample_curve(config.kind, config.n);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }

  const EvolutionRecord rec = run_evolution(config);
  const fs::path dir = prepare_dir(flags.out);
  io::RunManifest manifest;
  manifest.command = command;
  manifest.config = io::to_json(config);
  manifest.outputs.push_back(write_file(dir / "quantities.csv", [&](std::ostream& os) { io::write_quantities_csv(os, rec); }));
  manifest.outputs.push_back(
      write_file(dir / "snapshots.csv", [&](std::ostream& os) { io::write_snapshots_csv(os, rec.snapshots); }));
  manifest.failure = rec.failure;
  manifest.wall_seconds = seconds_since(t0);
  const fs::path mpath = dir / "manifest.json";
  manifest.outputs.push_back(mpath.string());
  write_file(mpath, [&](std::ostream& os) { os << manifest.to_json().dump(2) << '\n'; });

  if (rec.non_dominant_steps > 0) {
    std::cerr << "warning: " << rec.non_dominant_steps
              << " step(s) assembled a matrix that is not diagonally dominant\n";
  }
  if (rec.failure) {
    const double t = static_cast<double>(rec.failure->level) * config.tau;
    std::cerr << "error: step to level " << rec.failure->level << " (t = " << io::format_real(t) << ") failed with "
              << rec.failure->kind << ": " << rec.failure->message << '\n';
    return kExitNumerical;
  }
  std::printf("%zu steps; L %.6g -> %.6g, A %.6g -> %.6g, Psi %.6g -> %.6g\n", rec.levels() - 1,
              rec.perimeter.front(), rec.perimeter.back(), rec.area.front(), rec.area.back(), rec.mesh_ratio.front(),
              rec.mesh_ratio.back());
  return 0;
}

int run_converge(const CommonFlags& flags, int nmin, int levels, double t_final, double tau_coef, bool serial,
                 const std::string& command) {
  const auto t0 = std::chrono::steady_clock::now();
  ConvergenceStudy study;
  try {
    study.scheme = flags.parsed_scheme();
    study.kind = curve_kind_from_string(flags.kind);
    study.spec = flags.force();
    if (nmin < 3) throw UsageError("--nmin must be at least 3");
    if (levels < 1) throw UsageError("--levels must be at least 1");
    study.n_list.clear();
    for (int i = 0, n = nmin; i < levels; ++i, n *= 2) study.n_list.push_back(n);
    study.tau_rule.coefficient = tau_coef;
    study.t_final = t_final;
    study.alpha = flags.alpha;
    study.parallel = !serial;
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }

  ConvergenceTable table;
  try {
    table = run_convergence(study);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const fs::path dir = prepare_dir(flags.out);
  io::RunManifest manifest;
  manifest.command = command;
  manifest.config = io::to_json(study);
  manifest.outputs.push_back(
      write_file(dir / "convergence.csv", [&](std::ostream& os) { io::write_convergence_csv(os, table); }));
  manifest.wall_seconds = seconds_since(t0);
  for (const auto& r : table.rows) {
    if (r.failure && !manifest.failure) manifest.failure = r.failure;
  }
  const fs::path mpath = dir / "manifest.json";
  manifest.outputs.push_back(mpath.string());
  write_file(mpath, [&](std::ostream& os) { os << manifest.to_json().dump(2) << '\n'; });

  int status = 0;
  for (const auto& r : table.rows) {
    if (r.failure) {
      std::cerr << "error: row N = " << r.n << " failed at level " << r.failure->level << " with " << r.failure->kind
                << ": " << r.failure->message << '\n';
      status = kExitNumerical;
      continue;
    }
    std::printf("N=%4d", r.n);
    for (const auto& [name, e] : r.errors) {
      std::printf("  %s=%.4e", name.c_str(), e);
      if (auto it = r.eoc.find(name); it != r.eoc.end()) std::printf(" (%.2f)", it->second);
    }
    std::printf("\n");
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal curve flow solver"};
  app.require_subcommand(1);

  std::string command;
  for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);

  CommonFlags evolve_flags;
  int n = 0;
  double tau = 1.0 / 160.0;
  double t_final = 2.0;
  std::string snapshots;
  auto* evolve = app.add_subcommand("evolve", "Run one trajectory and record L, A, dA and Psi");
  evolve_flags.add_to(*evolve);
  evolve->add_option("--n", n, "Number of vertices")->required();
  evolve->add_option("--tau", tau, "Time step")->capture_default_str();
  evolve->add_option("--tfinal", t_final, "Final time, an integer multiple of tau")->capture_default_str();
  evolve->add_option("--snapshots", snapshots, "Comma-separated snapshot times (default 0 and T)");

  CommonFlags converge_flags;
  int nmin = 16;
  int levels = 4;
  double conv_t = 0.25;
  double tau_coef = 0.5;
  bool serial = false;
  auto* converge = app.add_subcommand("converge", "Self-refinement convergence study");
  converge_flags.add_to(*converge);
  converge->add_option("--nmin", nmin, "Coarsest N")->capture_default_str();
  converge->add_option("--levels", levels, "Number of rows (N doubles per row)")->capture_default_str();
  converge->add_option("--tfinal", conv_t, "Final time")->capture_default_str();
  converge->add_option("--tau-coef", tau_coef, "tau ~ coef * h^2 at the coarsest N")->capture_default_str();
  converge->add_flag("--serial", serial, "Run rows one after another");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (evolve->parsed()) return run_evolve(evolve_flags, n, tau, t_final, snapshots, command);
    return run_converge(converge_flags, nmin, levels, conv_t, tau_coef, serial, command);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    std::cerr << (evolve->parsed() ? evolve->help() : converge->help());
    return kExitUsage;
  } catch (const curveflow::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
