#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "imc/observations.hpp"
#include "imc/side_info.hpp"

namespace imc {

enum class StepRule { fixed, backtracking };

struct SolverOptions {
  int max_iters = 5000;
  double tol_rel_obj = 1e-8;
  double tol_feas = 1e-8;
  StepRule step_rule = StepRule::backtracking;
  bool accel = true;
  std::uint64_t seed = 0;
};

struct Solution {
  Matrix Mhat;                          // a x b core estimate
  Matrix Rhat;                          // X * Mhat * Y^T
  std::vector<double> objective_trace;  // per-iteration objective
  int iters = 0;
  bool converged = false;
  double kkt_residual = 0.0;
};

/// Accelerated proximal gradient (SVT prox) for
///   min_M (1/N) sum_{(i,j) in supp} h_ij (mean_ij - (XMY^T)_ij)^2
///         + lambda ||M||_*.
/// Repeated samples are aggregated to (mean, count) first; this changes the
/// per-sample objective only by an M-independent constant.
Solution solve_lagrangian(const SideInfoPair& side, const ObservationSet& obs,
                          double lambda, const SolverOptions& opts = {});

/// Equality-constrained nuclear-norm minimization
///   min_M ||M||_*  s.t.  (XMY^T)_ij = value_ij on Omega,
/// via ADMM between the SVT prox and projection onto the affine constraint
/// set.  Throws if repeated samples of the same entry disagree beyond
/// tol_feas.
Solution solve_exact(const SideInfoPair& side, const ObservationSet& obs,
                     const SolverOptions& opts = {});

struct LambdaInterval {
  double lo = 0.0;
  double mid = 0.0;
  double hi = 0.0;
};

/// Condition-(9) interval nu sigma0^2 / (C sqrt(aN)) <= lambda <=
/// C nu sigma0^2 / sqrt(aN), with geometric midpoint.
LambdaInterval lambda_from_theory(double sdv, double sigma0, int a,
                                  std::int64_t N, double C = 1.0);

/// Fits solve_lagrangian per grid point on `train`, scores RMSE of Rhat
/// against `val` sample values, returns the argmin lambda (ties -> smaller)
/// and the per-grid-point validation errors.
std::pair<double, std::vector<double>> cross_validate_lambda(
    const SideInfoPair& side, const ObservationSet& train,
    const ObservationSet& val, const std::vector<double>& grid,
    const SolverOptions& opts = {});

}  // namespace imc
