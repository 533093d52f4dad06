#include "imc/xnorms.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace imc {

double nuclear_norm(const Matrix& Z) {
  if (Z.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(Z);
  return svd.singularValues().sum();
}

double spectral_norm(const Matrix& Z) {
  if (Z.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(Z);
  return svd.singularValues()(0);
}

Matrix canonical_core(const Matrix& Z, const SideInfoPair& side) {
  return side.Sigma1.cwiseInverse().asDiagonal() *
         (side.Xbar.transpose() * Z * side.Ybar) *
         side.Sigma2.cwiseInverse().asDiagonal();
}

double xnuc_norm(const Matrix& Z, const SideInfoPair& side) {
  const double zf = Z.norm();
  if (zf == 0.0) return 0.0;
  // Residual outside col(X) x col(Y).
  const Matrix proj =
      side.Xbar * (side.Xbar.transpose() * Z * side.Ybar) *
      side.Ybar.transpose();
  if ((Z - proj).norm() > 1e-8 * zf) {
    throw std::invalid_argument("Z not representable as XMY^T");
  }
  return nuclear_norm(canonical_core(Z, side));
}

double xspec_norm(const Matrix& Z, const SideInfoPair& side) {
  return spectral_norm(side.X.transpose() * Z * side.Y);
}

}  // namespace imc
