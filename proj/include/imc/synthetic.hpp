#pragma once

#include <cstdint>

#include "imc/observations.hpp"
#include "imc/problem.hpp"

namespace imc {

/// Random rank-r ground truth UV^T normalized to Frobenius norm fro_norm,
/// with random orthonormal side information of dimensions a, b whose spans
/// contain the column/row spaces and are otherwise uniformly oriented.
ProblemInstance generate_synthetic(int m, int n, int r, int a, int b,
                                   double fro_norm, std::uint64_t seed);

struct Metrics {
  double rmse_fro = 0.0;  // ||Rhat - R||_F / sqrt(mn)
  double abs_loss = 0.0;  // mean_ij E|Rhat_ij - R_ij - zeta|, closed form
  double trunc_l2 = 0.0;  // mean_ij E[min((Rhat_ij - R_ij - zeta)^2, cap)]
};

/// Exact (noise-expectation closed-form) loss metrics.  `cap` is the
/// truncation level for trunc_l2.
Metrics error_metrics(const Matrix& Rhat, const ProblemInstance& instance,
                      const NoiseSpec& noise, double cap = 1.0);

/// Monte-Carlo empirical Rademacher complexity of
/// {(i,j) -> (XMY^T)_ij : ||M||_* <= Mnorm} under uniform sampling: the
/// inner supremum is Mnorm times the spectral norm of the sign-weighted
/// sampling matrix sum_k eps_k x_{i_k} y_{j_k}^T (nuclear/spectral duality).
double empirical_rademacher(const SideInfoPair& side, double Mnorm,
                            std::int64_t N, int mc_trials, std::uint64_t seed);

}  // namespace imc
