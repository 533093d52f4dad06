#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imc/solvers.hpp"

namespace imc {

struct SweepConfig {
  int m = 60, n = 60, r = 5, a = 20, b = 20;
  double fro_norm = 60.0;
  std::vector<double> sigma_list;
  std::vector<std::int64_t> N_grid;  // ascending
  int trials = 20;
  std::vector<double> lambda_grid;  // ascending; empty -> default log grid
  double val_fraction = 0.2;
  std::uint64_t seed = 1;
  SolverOptions solver_opts;
  double trunc_cap = 1.0;

  void validate() const;  // throws std::invalid_argument on bad config
  static SweepConfig paper_figure_preset();
};

struct SweepRow {
  double sigma = 0.0;
  std::int64_t N = 0;
  int trial = 0;
  double rmse_fro = 0.0;
  double abs_loss = 0.0;
  double trunc_l2 = 0.0;
  double lambda_selected = 0.0;
  double nuc_norm_gap = 0.0;  // ||Mhat||_* - ||M*||_*
  double runtime_s = 0.0;
  std::uint64_t seed = 0;
  bool solver_converged = true;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Deterministic per-cell seed: hash of (root seed, sigma index, N index,
/// trial).  Re-running one cell with this seed reproduces its row.
std::uint64_t sweep_cell_seed(std::uint64_t root_seed, std::size_t sigma_idx,
                              std::size_t n_idx, int trial);

/// Runs one cell (fresh instance, train/val sampling, lambda CV, solve,
/// metrics).
SweepRow run_sweep_cell(const SweepConfig& cfg, std::size_t sigma_idx,
                        std::size_t n_idx, int trial);

/// Full sweep.  If csv_path is non-empty, rows are appended to it as they
/// complete (header written if the file is new).
SweepResult run_sweep(const SweepConfig& cfg, const std::string& csv_path = "");

/// CSV plumbing for SweepRow.
std::string sweep_csv_header();
std::string sweep_row_csv(const SweepRow& row);

/// Per-(sigma, N) mean/std of rmse_fro as a JSON string, for plot tooling.
std::string sweep_summary_json(const SweepResult& result);

}  // namespace imc
