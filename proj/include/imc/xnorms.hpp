#pragma once

#include "imc/side_info.hpp"

namespace imc {

/// Canonical core of Z: M = Sigma1^-1 Xbar^T Z Ybar Sigma2^-1, the unique
/// core with X M Y^T = P_X Z P_Y.
Matrix canonical_core(const Matrix& Z, const SideInfoPair& side);

/// Nuclear norm of the canonical core; the minimum of ||M||_* over
/// {M : X M Y^T = Z}.  Throws std::invalid_argument if Z is not (within
/// 1e-8 relative) representable as X M Y^T.
double xnuc_norm(const Matrix& Z, const SideInfoPair& side);

/// Spectral norm of X^T Z Y; dual to xnuc_norm.
double xspec_norm(const Matrix& Z, const SideInfoPair& side);

/// Ordinary nuclear and spectral norms.
double nuclear_norm(const Matrix& Z);
double spectral_norm(const Matrix& Z);

}  // namespace imc
