#include "imc/svt.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace imc {

Matrix svt(const Matrix& Z, double tau) {
  if (tau < 0.0) throw std::invalid_argument("svt threshold must be >= 0");
  if (Z.size() == 0) return Z;
  Eigen::JacobiSVD<Matrix> svd(Z, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector s = (svd.singularValues().array() - tau).max(0.0);
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

}  // namespace imc
