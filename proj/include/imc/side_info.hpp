#pragma once

#include <Eigen/Dense>

namespace imc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Side information matrices X (m x a) and Y (n x b) in canonical form:
/// columns orthogonal, ordered by decreasing norm, largest norm scaled to 1.
///
/// Construction computes the thin SVD of the raw inputs and keeps the left
/// factors, so X = Xbar * diag(Sigma1) with Xbar orthonormal.  The right
/// factors are kept so that a core matrix expressed against the raw inputs
/// can be carried over to the canonical coordinates.
struct SideInfoPair {
  Matrix X;     // m x a, canonical
  Matrix Y;     // n x b, canonical
  Matrix Xbar;  // m x a, orthonormal columns
  Matrix Ybar;  // n x b, orthonormal columns
  Vector Sigma1;  // descending, Sigma1[0] == 1
  Vector Sigma2;  // descending, Sigma2[0] == 1
  double sigma0 = 0.0;  // min over both spectra

  // Change of basis from raw to canonical coordinates:
  //   M_canonical = x_scale * y_scale * Vx^T * M_raw * Vy
  Matrix Vx;  // a x a
  Matrix Vy;  // b x b
  double x_scale = 1.0;  // largest singular value of the raw X
  double y_scale = 1.0;

  int m() const { return static_cast<int>(X.rows()); }
  int n() const { return static_cast<int>(Y.rows()); }
  int a() const { return static_cast<int>(X.cols()); }
  int b() const { return static_cast<int>(Y.cols()); }

  /// Carry a raw-coordinate core matrix into canonical coordinates,
  /// preserving X_raw * M * Y_raw^T = X * M_canonical * Y^T.
  Matrix to_canonical_core(const Matrix& M_raw) const {
    return x_scale * y_scale * (Vx.transpose() * M_raw * Vy);
  }
};

/// Canonicalize raw side information.  Throws std::invalid_argument if
/// either matrix is rank deficient or wider than tall.
SideInfoPair make_side_info(const Matrix& X_raw, const Matrix& Y_raw);

/// Fix SVD sign ambiguity: make the largest-magnitude entry of each left
/// singular vector positive (flipping the matching right vector).
void fix_svd_signs(Matrix& U, Matrix& V);

}  // namespace imc
