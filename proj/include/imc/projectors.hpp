#pragma once

#include <cstdint>

#include "imc/observations.hpp"
#include "imc/problem.hpp"

namespace imc {

/// Tangent-space machinery at the ground truth, held in factored form:
/// P_X = Xbar Xbar^T, P_Y = Ybar Ybar^T, P_E = E E^T with E = Xbar A,
/// P_F = F F^T with F = Ybar B.
struct ProjectorContext {
  Matrix Xbar;  // m x a
  Matrix Ybar;  // n x b
  Matrix E;     // m x r
  Matrix F;     // n x r

  static ProjectorContext from_instance(const ProblemInstance& instance);
};

/// P_T(Z) = P_E Z P_Y + P_X Z P_F - P_E Z P_F.
Matrix project_T(const Matrix& Z, const ProjectorContext& ctx);

/// P_Tperp(Z) = (P_X - P_E) Z (P_Y - P_F): the complement of T within the
/// range structure col(X) x col(Y).  P_T + P_Tperp recovers P_X Z P_Y.
Matrix project_T_perp(const Matrix& Z, const ProjectorContext& ctx);

/// [P_Omega(Z)]_ij = h_ij Z_ij (multiplicity-weighted restriction).
Matrix project_omega(const Matrix& Z, const ObservationSet& obs);

enum class DeviationMode { tangent, complement };

struct DeviationEstimate {
  double value = 0.0;
  int iters = 0;
  bool converged = false;
};

/// Operator norm of P - (mn/N) P P_Omega P with P = P_T (tangent mode) or
/// P_Tperp (complement mode), estimated by power iteration on the space of
/// m x n matrices.  Seeded random start, relative tolerance 1e-6, 500
/// iteration cap (non-convergence returns the best estimate, flagged).
DeviationEstimate operator_deviation_T(const ProjectorContext& ctx,
                                       const ObservationSet& obs,
                                       DeviationMode mode = DeviationMode::tangent,
                                       std::uint64_t seed = 12345);

}  // namespace imc
