// Command-line front end: generate | sample | solve | solve-exact | certify
// | diagnose | bounds | sweep | rademacher.  Each subcommand reads a JSON
// config, writes its artifacts plus a manifest.json under --output-dir.
//
// Exit codes: 0 success, 1 runtime failure, 2 config/schema error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "imc/bounds.hpp"
#include "imc/certificates.hpp"
#include "imc/io.hpp"
#include "imc/observations.hpp"
#include "imc/problem.hpp"
#include "imc/solvers.hpp"
#include "imc/sweep.hpp"
#include "imc/synthetic.hpp"
#include "imc/xnorms.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

template <typename T>
T require(const json& cfg, const std::string& key) {
  if (!cfg.contains(key)) throw ConfigError("config missing key: " + key);
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key has wrong type: " + key);
  }
}

template <typename T>
T get_or(const json& cfg, const std::string& key, T fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key has wrong type: " + key);
  }
}

imc::SolverOptions solver_options(const json& cfg) {
  imc::SolverOptions opts;
  if (!cfg.contains("solver_opts")) return opts;
  const json& s = cfg.at("solver_opts");
  opts.max_iters = get_or<int>(s, "max_iters", opts.max_iters);
  opts.tol_rel_obj = get_or<double>(s, "tol_rel_obj", opts.tol_rel_obj);
  opts.tol_feas = get_or<double>(s, "tol_feas", opts.tol_feas);
  opts.accel = get_or<bool>(s, "accel", opts.accel);
  opts.seed = get_or<std::uint64_t>(s, "seed", opts.seed);
  const std::string rule = get_or<std::string>(s, "step_rule", "backtracking");
  if (rule == "fixed") {
    opts.step_rule = imc::StepRule::fixed;
  } else if (rule == "backtracking") {
    opts.step_rule = imc::StepRule::backtracking;
  } else {
    throw ConfigError("step_rule must be 'fixed' or 'backtracking'");
  }
  if (opts.max_iters < 1 || opts.tol_rel_obj <= 0 || opts.tol_feas <= 0) {
    throw ConfigError("invalid solver_opts");
  }
  return opts;
}

imc::ProblemInstance load_instance(const json& cfg) {
  const imc::Matrix X = imc::read_matrix_csv(require<std::string>(cfg, "X"));
  const imc::Matrix Y = imc::read_matrix_csv(require<std::string>(cfg, "Y"));
  const imc::Matrix M =
      imc::read_matrix_csv(require<std::string>(cfg, "Mstar"));
  return imc::build_problem_instance(X, Y, M);
}

imc::ObservationSet load_observations(const json& cfg, int m, int n) {
  return imc::read_observations_csv(
      require<std::string>(cfg, "observations"), m, n);
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void write_manifest(const fs::path& dir, const std::string& subcommand,
                    const std::string& config_path, const json& cfg,
                    std::uint64_t seed) {
  json manifest;
  manifest["tool"] = "imc";
  manifest["version"] = kVersion;
  manifest["subcommand"] = subcommand;
  manifest["config_path"] = config_path;
  manifest["config"] = cfg;
  manifest["config_hash"] = fnv1a_hex(cfg.dump());
  manifest["seed"] = seed;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

json solution_json(const imc::Solution& sol) {
  json out;
  out["iters"] = sol.iters;
  out["converged"] = sol.converged;
  out["kkt_residual"] = sol.kkt_residual;
  out["objective_final"] = sol.objective_trace.empty()
                               ? 0.0
                               : sol.objective_trace.back();
  out["objective_trace"] = sol.objective_trace;
  return out;
}

// ---- subcommands ---------------------------------------------------------

int cmd_generate(const json& cfg, const fs::path& out_dir,
                 std::optional<std::uint64_t> seed_override) {
  const int m = require<int>(cfg, "m"), n = require<int>(cfg, "n");
  const int r = require<int>(cfg, "r");
  const int a = require<int>(cfg, "a"), b = require<int>(cfg, "b");
  const double fro = require<double>(cfg, "fro_norm");
  const std::uint64_t seed =
      seed_override.value_or(require<std::uint64_t>(cfg, "seed"));
  const imc::ProblemInstance inst =
      imc::generate_synthetic(m, n, r, a, b, fro, seed);
  imc::write_matrix_csv((out_dir / "X.csv").string(), inst.side.X);
  imc::write_matrix_csv((out_dir / "Y.csv").string(), inst.side.Y);
  imc::write_matrix_csv((out_dir / "Mstar.csv").string(), inst.Mstar);
  imc::write_matrix_csv((out_dir / "R.csv").string(), inst.R);
  json meta;
  meta["m"] = m;
  meta["n"] = n;
  meta["r"] = inst.r;
  meta["a"] = a;
  meta["b"] = b;
  meta["sigma0"] = inst.side.sigma0;
  meta["mu"] = inst.mu;
  meta["mu1"] = inst.mu1;
  meta["R_fro"] = inst.R.norm();
  write_text(out_dir / "instance.json", meta.dump(2) + "\n");
  write_manifest(out_dir, "generate", "", cfg, seed);
  return 0;
}

int cmd_sample(const json& cfg, const fs::path& out_dir,
               std::optional<std::uint64_t> seed_override) {
  const imc::ProblemInstance inst = load_instance(cfg);
  const std::int64_t N = require<std::int64_t>(cfg, "N");
  const double sdv = get_or<double>(cfg, "sdv", 0.0);
  const std::uint64_t seed =
      seed_override.value_or(require<std::uint64_t>(cfg, "seed"));
  const imc::ObservationSet obs = imc::sample_observations(
      inst, N, sdv > 0 ? imc::NoiseSpec::gaussian(sdv) : imc::NoiseSpec::none(),
      seed);
  imc::write_observations_csv((out_dir / "observations.csv").string(), obs);
  const auto mult =
      imc::multiplicity_stats(obs, get_or<double>(cfg, "delta5", 0.01));
  json rep;
  rep["N"] = N;
  rep["max_count"] = mult.max_count;
  rep["min_count"] = mult.min_count;
  rep["tau5_bound"] = mult.tau5_bound;
  if (mult.has_tau5_tilde) rep["tau5_tilde"] = mult.tau5_tilde;
  rep["coverage_ok"] = mult.coverage_ok;
  write_text(out_dir / "multiplicity.json", rep.dump(2) + "\n");
  write_manifest(out_dir, "sample", "", cfg, seed);
  return 0;
}

int cmd_solve(const json& cfg, const fs::path& out_dir, bool exact) {
  const imc::ProblemInstance inst = load_instance(cfg);
  const imc::ObservationSet obs = load_observations(cfg, inst.m(), inst.n());
  const imc::SolverOptions opts = solver_options(cfg);
  imc::Solution sol;
  double lambda = 0.0;
  if (exact) {
    sol = imc::solve_exact(inst.side, obs, opts);
  } else {
    lambda = require<double>(cfg, "lambda");
    sol = imc::solve_lagrangian(inst.side, obs, lambda, opts);
  }
  imc::write_matrix_csv((out_dir / "Mhat.csv").string(), sol.Mhat);
  imc::write_matrix_csv((out_dir / "Rhat.csv").string(), sol.Rhat);
  json diag = solution_json(sol);
  if (!exact) diag["lambda"] = lambda;
  diag["rel_error_fro"] = (sol.Rhat - inst.R).norm() / inst.R.norm();
  write_text(out_dir / "solution.json", diag.dump(2) + "\n");
  write_manifest(out_dir, exact ? "solve-exact" : "solve", "", cfg,
                 opts.seed);
  return sol.converged ? 0 : 1;
}

int cmd_certify(const json& cfg, const fs::path& out_dir,
                std::optional<std::uint64_t> seed_override) {
  const imc::ProblemInstance inst = load_instance(cfg);
  const imc::ObservationSet obs = load_observations(cfg, inst.m(), inst.n());
  const int q = require<int>(cfg, "q");
  const std::int64_t batch = require<std::int64_t>(cfg, "batch_size");
  const std::uint64_t seed =
      seed_override.value_or(require<std::uint64_t>(cfg, "seed"));
  const double tau = get_or<double>(cfg, "tau", 0.0);
  const imc::CertificateReport rep =
      imc::golfing_certificate(inst, obs, q, batch, seed, tau);
  json out;
  out["cond13_value"] = rep.cond13_value;
  out["cond13_bound"] = rep.cond13_bound;
  out["cond14_value"] = rep.cond14_value;
  out["cond14_bound"] = rep.cond14_bound;
  out["tau_used"] = rep.tau_used;
  out["q_used"] = rep.q_used;
  out["passed"] = rep.passed;
  write_text(out_dir / "certificate.json", out.dump(2) + "\n");
  if (get_or<bool>(cfg, "write_Y_cert", false)) {
    imc::write_matrix_csv((out_dir / "Y_cert.csv").string(), rep.Y_cert);
  }
  write_manifest(out_dir, "certify", "", cfg, seed);
  return 0;
}

int cmd_diagnose(const json& cfg, const fs::path& out_dir) {
  const imc::ProblemInstance inst = load_instance(cfg);
  const imc::ObservationSet obs = load_observations(cfg, inst.m(), inst.n());
  const imc::SolverOptions opts = solver_options(cfg);
  const double sdv = require<double>(cfg, "sdv");
  const double C = get_or<double>(cfg, "C", 1.0);
  double lambda;
  if (cfg.contains("lambda")) {
    lambda = require<double>(cfg, "lambda");
  } else {
    lambda = imc::lambda_from_theory(sdv, inst.side.sigma0, inst.a(),
                                     static_cast<std::int64_t>(
                                         obs.samples.size()),
                                     C)
                 .mid;
  }
  const imc::Solution sol = imc::solve_lagrangian(inst.side, obs, lambda, opts);
  const imc::DiagnosticsRecord rec = imc::check_recovery_diagnostics(
      sol, inst, obs, lambda, sdv, C, get_or<double>(cfg, "delta0", 0.01));
  json out;
  out["lambda"] = lambda;
  out["H_nuc"] = rec.H_nuc;
  out["Z_nuc"] = rec.Z_nuc;
  out["total_nuc"] = rec.total_nuc;
  out["H_bound"] = rec.H_bound;
  out["Z_bound"] = rec.Z_bound;
  out["total_bound"] = rec.total_bound;
  out["H_ok"] = rec.H_ok;
  out["Z_ok"] = rec.Z_ok;
  out["total_ok"] = rec.total_ok;
  out["B"] = rec.B;
  out["kappa"] = rec.kappa;
  out["tau"] = rec.tau;
  out["solution"] = solution_json(sol);
  write_text(out_dir / "diagnostics.json", out.dump(2) + "\n");
  write_manifest(out_dir, "diagnose", "", cfg, opts.seed);
  return 0;
}

int cmd_bounds(const json& cfg, const fs::path& out_dir) {
  imc::BoundParams p;
  p.m = require<int>(cfg, "m");
  p.n = require<int>(cfg, "n");
  p.a = require<int>(cfg, "a");
  p.b = require<int>(cfg, "b");
  p.r = require<int>(cfg, "r");
  p.mu = require<double>(cfg, "mu");
  p.mu1 = get_or<double>(cfg, "mu1", 0.0);
  p.sigma0 = require<double>(cfg, "sigma0");
  p.sdv = get_or<double>(cfg, "sdv", 0.0);
  p.Delta = get_or<double>(cfg, "Delta", 0.05);
  p.C = get_or<double>(cfg, "C", 1.0);
  p.loss_lipschitz = get_or<double>(cfg, "loss_lipschitz", 1.0);
  p.loss_bound = get_or<double>(cfg, "loss_bound", 1.0);
  p.delta0 = get_or<double>(cfg, "delta0", 0.0);
  p.delta1 = get_or<double>(cfg, "delta1", 0.0);
  p.delta2 = get_or<double>(cfg, "delta2", 0.0);
  const auto N_grid = require<std::vector<std::int64_t>>(cfg, "N_grid");
  if (N_grid.empty()) throw ConfigError("N_grid must be non-empty");

  const imc::RecoveryThreshold thr = imc::exact_recovery_threshold(p);
  std::ostringstream csv;
  csv << "N,above_N_star_tilde,above_N_star_explicit,bound_bounded_loss,"
         "bound_absolute_loss\n";
  for (std::int64_t N : N_grid) {
    csv << N << "," << (N >= thr.N_star_tilde ? 1 : 0) << ","
        << (N >= thr.N_star_explicit ? 1 : 0) << ","
        << imc::format_double(imc::generalization_bound(
               p, N, imc::BoundVariant::bounded_loss))
        << ","
        << imc::format_double(imc::generalization_bound(
               p, N, imc::BoundVariant::absolute_loss))
        << "\n";
  }
  write_text(out_dir / "bounds.csv", csv.str());
  json out;
  out["N_star_tilde"] = thr.N_star_tilde;
  out["N_star_explicit"] = thr.N_star_explicit;
  out["q0"] = thr.q0;
  out["Tbar"] = thr.Tbar;
  write_text(out_dir / "thresholds.json", out.dump(2) + "\n");
  write_manifest(out_dir, "bounds", "", cfg, 0);
  return 0;
}

int cmd_sweep(const json& cfg, const fs::path& out_dir,
              std::optional<std::uint64_t> seed_override) {
  imc::SweepConfig sc;
  if (get_or<std::string>(cfg, "preset", "") == "paper-figure") {
    sc = imc::SweepConfig::paper_figure_preset();
  }
  sc.m = get_or<int>(cfg, "m", sc.m);
  sc.n = get_or<int>(cfg, "n", sc.n);
  sc.r = get_or<int>(cfg, "r", sc.r);
  sc.a = get_or<int>(cfg, "a", sc.a);
  sc.b = get_or<int>(cfg, "b", sc.b);
  sc.fro_norm = get_or<double>(cfg, "fro_norm", sc.fro_norm);
  sc.sigma_list = get_or<std::vector<double>>(cfg, "sigma_list", sc.sigma_list);
  sc.N_grid = get_or<std::vector<std::int64_t>>(cfg, "N_grid", sc.N_grid);
  sc.trials = get_or<int>(cfg, "trials", sc.trials);
  sc.lambda_grid =
      get_or<std::vector<double>>(cfg, "lambda_grid", sc.lambda_grid);
  sc.val_fraction = get_or<double>(cfg, "val_fraction", sc.val_fraction);
  sc.seed = seed_override.value_or(get_or<std::uint64_t>(cfg, "seed", sc.seed));
  sc.trunc_cap = get_or<double>(cfg, "trunc_cap", sc.trunc_cap);
  sc.solver_opts = solver_options(cfg);
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const imc::SweepResult result =
      imc::run_sweep(sc, (out_dir / "sweep.csv").string());
  write_text(out_dir / "summary.json", imc::sweep_summary_json(result) + "\n");
  write_manifest(out_dir, "sweep", "", cfg, sc.seed);
  return 0;
}

int cmd_rademacher(const json& cfg, const fs::path& out_dir,
                   std::optional<std::uint64_t> seed_override) {
  const imc::Matrix X = imc::read_matrix_csv(require<std::string>(cfg, "X"));
  const imc::Matrix Y = imc::read_matrix_csv(require<std::string>(cfg, "Y"));
  const imc::SideInfoPair side = imc::make_side_info(X, Y);
  const double Mnorm = require<double>(cfg, "Mnorm");
  const std::int64_t N = require<std::int64_t>(cfg, "N");
  const int mc_trials = get_or<int>(cfg, "mc_trials", 100);
  const std::uint64_t seed =
      seed_override.value_or(require<std::uint64_t>(cfg, "seed"));
  json out;
  out["empirical"] = imc::empirical_rademacher(side, Mnorm, N, mc_trials, seed);
  out["bound"] = imc::rademacher_bound(side, Mnorm, N);
  out["N"] = N;
  out["mc_trials"] = mc_trials;
  write_text(out_dir / "rademacher.json", out.dump(2) + "\n");
  write_manifest(out_dir, "rademacher", "", cfg, seed);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inductive matrix completion toolkit"};
  app.require_subcommand(1);

  std::string config_path, output_dir = ".";
  std::optional<std::uint64_t> seed_override;
  int verbosity = 0;

  const std::vector<std::string> names = {
      "generate", "sample",   "solve", "solve-exact", "certify",
      "diagnose", "bounds",   "sweep", "rademacher"};
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("-c,--config", config_path, "JSON config file")
        ->required();
    sub->add_option("-o,--output-dir", output_dir, "output directory");
    sub->add_option("--seed", seed_override, "root seed override");
    sub->add_flag("-v,--verbose", verbosity, "verbosity");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();

  try {
    const json cfg = load_config(config_path);
    const fs::path out_dir(output_dir);
    fs::create_directories(out_dir);
    int rc = 1;
    if (sub == "generate") rc = cmd_generate(cfg, out_dir, seed_override);
    else if (sub == "sample") rc = cmd_sample(cfg, out_dir, seed_override);
    else if (sub == "solve") rc = cmd_solve(cfg, out_dir, false);
    else if (sub == "solve-exact") rc = cmd_solve(cfg, out_dir, true);
    else if (sub == "certify") rc = cmd_certify(cfg, out_dir, seed_override);
    else if (sub == "diagnose") rc = cmd_diagnose(cfg, out_dir);
    else if (sub == "bounds") rc = cmd_bounds(cfg, out_dir);
    else if (sub == "sweep") rc = cmd_sweep(cfg, out_dir, seed_override);
    else if (sub == "rademacher")
      rc = cmd_rademacher(cfg, out_dir, seed_override);
    return rc;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
