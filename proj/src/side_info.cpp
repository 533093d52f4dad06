#include "imc/side_info.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace imc {

void fix_svd_signs(Matrix& U, Matrix& V) {
  for (int k = 0; k < U.cols(); ++k) {
    int idx = 0;
    U.col(k).cwiseAbs().maxCoeff(&idx);
    if (U(idx, k) < 0.0) {
      U.col(k) = -U.col(k);
      if (k < V.cols()) V.col(k) = -V.col(k);
    }
  }
}

namespace {

constexpr double kRankTol = 1e-10;

void canonicalize(const Matrix& raw, const char* name, Matrix& canonical,
                  Matrix& bar, Vector& sigma, Matrix& V, double& scale) {
  if (raw.rows() < raw.cols()) {
    throw std::invalid_argument(std::string(name) +
                                ": more columns than rows");
  }
  Eigen::JacobiSVD<Matrix> svd(raw, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Matrix U = svd.matrixU();
  V = svd.matrixV();
  fix_svd_signs(U, V);
  sigma = svd.singularValues();
  scale = sigma(0);
  const int k = static_cast<int>(sigma.size());
  if (scale <= 0.0 || sigma(k - 1) <= kRankTol * scale) {
    throw std::invalid_argument("side information not full column rank");
  }
  sigma /= scale;
  bar = U;
  canonical = U * sigma.asDiagonal();
}

}  // namespace

SideInfoPair make_side_info(const Matrix& X_raw, const Matrix& Y_raw) {
  SideInfoPair side;
  canonicalize(X_raw, "X", side.X, side.Xbar, side.Sigma1, side.Vx,
               side.x_scale);
  canonicalize(Y_raw, "Y", side.Y, side.Ybar, side.Sigma2, side.Vy,
               side.y_scale);
  side.sigma0 =
      std::min(side.Sigma1(side.Sigma1.size() - 1),
               side.Sigma2(side.Sigma2.size() - 1));
  return side;
}

}  // namespace imc
