#include "imc/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "imc/io.hpp"
#include "imc/rng.hpp"
#include "imc/synthetic.hpp"
#include "imc/xnorms.hpp"

namespace imc {

void SweepConfig::validate() const {
  if (!(r >= 1 && r <= a && a <= m && r <= b && b <= n)) {
    throw std::invalid_argument("require 1 <= r <= a <= m and r <= b <= n");
  }
  if (fro_norm <= 0.0) throw std::invalid_argument("fro_norm must be > 0");
  if (sigma_list.empty()) throw std::invalid_argument("sigma_list is empty");
  if (N_grid.empty() || !std::is_sorted(N_grid.begin(), N_grid.end())) {
    throw std::invalid_argument("N_grid must be non-empty and ascending");
  }
  if (N_grid.front() < 1) throw std::invalid_argument("N_grid entries >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(val_fraction > 0.0 && val_fraction <= 0.5)) {
    throw std::invalid_argument("val_fraction must be in (0, 0.5]");
  }
  if (!lambda_grid.empty() &&
      !std::is_sorted(lambda_grid.begin(), lambda_grid.end())) {
    throw std::invalid_argument("lambda_grid must be sorted ascending");
  }
}

SweepConfig SweepConfig::paper_figure_preset() {
  SweepConfig cfg;
  cfg.m = cfg.n = 100;
  cfg.r = 10;
  cfg.a = cfg.b = 40;
  cfg.fro_norm = 100.0;
  cfg.trials = 40;
  cfg.sigma_list = {0.0, 0.05, 0.15, 0.3};
  for (int k = 0; k < 12; ++k) {
    const double lo = std::log(static_cast<double>(cfg.a) * cfg.r);
    const double hi = std::log(0.8 * cfg.m * cfg.n);
    cfg.N_grid.push_back(static_cast<std::int64_t>(
        std::llround(std::exp(lo + (hi - lo) * k / 11.0))));
  }
  return cfg;
}

namespace {

std::vector<double> default_lambda_grid() {
  // log grid 1e-6..1, 13 points.
  std::vector<double> grid;
  for (int k = 0; k < 13; ++k) grid.push_back(std::pow(10.0, -6.0 + 0.5 * k));
  return grid;
}

}  // namespace

std::uint64_t sweep_cell_seed(std::uint64_t root_seed, std::size_t sigma_idx,
                              std::size_t n_idx, int trial) {
  return combine_seed(
      combine_seed(combine_seed(root_seed, sigma_idx), n_idx),
      static_cast<std::uint64_t>(trial));
}

SweepRow run_sweep_cell(const SweepConfig& cfg, std::size_t sigma_idx,
                        std::size_t n_idx, int trial) {
  const double sigma = cfg.sigma_list.at(sigma_idx);
  const std::int64_t N = cfg.N_grid.at(n_idx);
  const std::uint64_t cell_seed =
      sweep_cell_seed(cfg.seed, sigma_idx, n_idx, trial);

  SweepRow row;
  row.sigma = sigma;
  row.N = N;
  row.trial = trial;
  row.seed = cell_seed;

  const auto t0 = std::chrono::steady_clock::now();
  const ProblemInstance inst =
      generate_synthetic(cfg.m, cfg.n, cfg.r, cfg.a, cfg.b, cfg.fro_norm,
                         combine_seed(cell_seed, 1));
  const NoiseSpec noise =
      sigma > 0.0 ? NoiseSpec::gaussian(sigma) : NoiseSpec::none();
  const ObservationSet train =
      sample_observations(inst, N, noise, combine_seed(cell_seed, 2));
  const std::int64_t val_n = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::llround(cfg.val_fraction * N)));
  const ObservationSet val =
      sample_observations(inst, val_n, noise, combine_seed(cell_seed, 3));

  const std::vector<double> grid =
      cfg.lambda_grid.empty() ? default_lambda_grid() : cfg.lambda_grid;
  const auto [lambda_star, errs] =
      cross_validate_lambda(inst.side, train, val, grid, cfg.solver_opts);
  row.lambda_selected = lambda_star;

  const Solution sol =
      solve_lagrangian(inst.side, train, lambda_star, cfg.solver_opts);
  row.solver_converged = sol.converged;
  const Metrics metrics = error_metrics(sol.Rhat, inst, noise, cfg.trunc_cap);
  row.rmse_fro = metrics.rmse_fro;
  row.abs_loss = metrics.abs_loss;
  row.trunc_l2 = metrics.trunc_l2;
  row.nuc_norm_gap =
      nuclear_norm(sol.Mhat) - nuclear_norm(inst.Mstar);
  row.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return row;
}

std::string sweep_csv_header() {
  return "sigma,N,trial,rmse_fro,abs_loss,trunc_l2,lambda_selected,"
         "nuc_norm_gap,runtime_s,seed";
}

std::string sweep_row_csv(const SweepRow& row) {
  std::ostringstream out;
  out << format_double(row.sigma) << "," << row.N << "," << row.trial << ","
      << format_double(row.rmse_fro) << "," << format_double(row.abs_loss)
      << "," << format_double(row.trunc_l2) << ","
      << format_double(row.lambda_selected) << ","
      << format_double(row.nuc_norm_gap) << ","
      << format_double(row.runtime_s) << "," << row.seed;
  return out.str();
}

SweepResult run_sweep(const SweepConfig& cfg, const std::string& csv_path) {
  cfg.validate();
  SweepResult result;
  const bool emit = !csv_path.empty();
  if (emit && !std::filesystem::exists(csv_path)) {
    std::ofstream out(csv_path);
    out << sweep_csv_header() << "\n";
  }
  for (std::size_t si = 0; si < cfg.sigma_list.size(); ++si) {
    for (std::size_t ni = 0; ni < cfg.N_grid.size(); ++ni) {
      for (int t = 0; t < cfg.trials; ++t) {
        SweepRow row;
        try {
          row = run_sweep_cell(cfg, si, ni, t);
        } catch (const std::exception&) {
          // Per-cell failure: record a sentinel row, keep sweeping.
          row.sigma = cfg.sigma_list[si];
          row.N = cfg.N_grid[ni];
          row.trial = t;
          row.seed = sweep_cell_seed(cfg.seed, si, ni, t);
          row.rmse_fro = std::nan("");
          row.solver_converged = false;
        }
        result.rows.push_back(row);
        if (emit) {
          // Append-per-row keeps partial results on crash.
          std::ofstream out(csv_path, std::ios::app);
          out << sweep_row_csv(row) << "\n";
        }
      }
    }
  }
  return result;
}

std::string sweep_summary_json(const SweepResult& result) {
  std::map<std::pair<double, std::int64_t>, std::vector<double>> cells;
  for (const auto& row : result.rows) {
    if (std::isnan(row.rmse_fro)) continue;
    cells[{row.sigma, row.N}].push_back(row.rmse_fro);
  }
  std::ostringstream out;
  out << "{\"cells\":[";
  bool first = true;
  for (const auto& [key, vals] : cells) {
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    const double sd =
        vals.size() > 1 ? std::sqrt(var / (vals.size() - 1.0)) : 0.0;
    if (!first) out << ",";
    first = false;
    out << "{\"sigma\":" << format_double(key.first) << ",\"N\":" << key.second
        << ",\"trials\":" << vals.size()
        << ",\"rmse_mean\":" << format_double(mean)
        << ",\"rmse_std\":" << format_double(sd) << "}";
  }
  out << "]}";
  return out.str();
}

}  // namespace imc
