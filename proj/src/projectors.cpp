#include "imc/projectors.hpp"

#include <cmath>

#include "imc/rng.hpp"

namespace imc {

ProjectorContext ProjectorContext::from_instance(
    const ProblemInstance& instance) {
  ProjectorContext ctx;
  ctx.Xbar = instance.side.Xbar;
  ctx.Ybar = instance.side.Ybar;
  ctx.E = instance.side.Xbar * instance.A;
  ctx.F = instance.side.Ybar * instance.B;
  return ctx;
}

Matrix project_T(const Matrix& Z, const ProjectorContext& ctx) {
  // P_E Z P_Y + P_X Z P_F - P_E Z P_F, all applied in factored form.
  const Matrix EtZ = ctx.E.transpose() * Z;            // r x n
  const Matrix ZF = Z * ctx.F;                         // m x r
  const Matrix EtZF = ctx.E.transpose() * ZF;          // r x r
  return ctx.E * (EtZ * ctx.Ybar) * ctx.Ybar.transpose() +
         ctx.Xbar * (ctx.Xbar.transpose() * ZF) * ctx.F.transpose() -
         ctx.E * EtZF * ctx.F.transpose();
}

Matrix project_T_perp(const Matrix& Z, const ProjectorContext& ctx) {
  // (P_X - P_E) Z (P_Y - P_F)
  const Matrix left = ctx.Xbar * (ctx.Xbar.transpose() * Z) -
                      ctx.E * (ctx.E.transpose() * Z);
  return left * ctx.Ybar * ctx.Ybar.transpose() -
         (left * ctx.F) * ctx.F.transpose();
}

Matrix project_omega(const Matrix& Z, const ObservationSet& obs) {
  Matrix out = Matrix::Zero(Z.rows(), Z.cols());
  for (const auto& [k, c] : obs.counts) {
    const int i = static_cast<int>(k / obs.n);
    const int j = static_cast<int>(k % obs.n);
    out(i, j) = c * Z(i, j);
  }
  return out;
}

DeviationEstimate operator_deviation_T(const ProjectorContext& ctx,
                                       const ObservationSet& obs,
                                       DeviationMode mode,
                                       std::uint64_t seed) {
  const int m = static_cast<int>(ctx.Xbar.rows());
  const int n = static_cast<int>(ctx.Ybar.rows());
  const double mn_over_N =
      static_cast<double>(m) * n / static_cast<double>(obs.samples.size());
  const auto P = [&](const Matrix& Z) {
    return mode == DeviationMode::tangent ? project_T(Z, ctx)
                                          : project_T_perp(Z, ctx);
  };
  const auto apply = [&](const Matrix& Z) {
    const Matrix PZ = P(Z);
    return Matrix(PZ - mn_over_N * P(project_omega(PZ, obs)));
  };

  Rng rng(seed);
  Matrix Z(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) Z(i, j) = rng.gaussian();
  Z /= Z.norm();

  DeviationEstimate est;
  constexpr int kMaxIters = 500;
  constexpr double kRelTol = 1e-6;
  double prev = 0.0;
  for (int it = 1; it <= kMaxIters; ++it) {
    Matrix W = apply(Z);
    const double norm = W.norm();
    est.value = norm;
    est.iters = it;
    if (norm <= 1e-12) {  // operator is (numerically) zero
      est.value = 0.0;
      est.converged = true;
      return est;
    }
    Z = W / norm;
    if (it > 1 && std::abs(norm - prev) <= kRelTol * std::max(norm, 1e-300)) {
      est.converged = true;
      return est;
    }
    prev = norm;
  }
  return est;  // best estimate, converged == false
}

}  // namespace imc
