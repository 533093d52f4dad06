#include "imc/synthetic.hpp"

#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

#include "imc/rng.hpp"
#include "imc/xnorms.hpp"

namespace imc {

namespace {

Matrix gaussian_matrix(int rows, int cols, Rng& rng) {
  Matrix G(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) G(i, j) = rng.gaussian();
  return G;
}

// Orthonormal d x k basis whose span contains col(anchor), with uniformly
// random orientation within that span.
Matrix random_basis_containing(const Matrix& anchor, int k, Rng& rng) {
  const int d = static_cast<int>(anchor.rows());
  const int r = static_cast<int>(anchor.cols());
  Matrix seed_cols(d, k);
  seed_cols.leftCols(r) = anchor;
  seed_cols.rightCols(k - r) = gaussian_matrix(d, k - r, rng);
  const Matrix Q = Eigen::HouseholderQR<Matrix>(seed_cols)
                       .householderQ() *
                   Matrix::Identity(d, k);
  const Matrix O = Eigen::HouseholderQR<Matrix>(gaussian_matrix(k, k, rng))
                       .householderQ() *
                   Matrix::Identity(k, k);
  return Q * O;
}

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

double norm_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }
double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// E|N(d, sdv^2)| (folded-normal mean).
double folded_mean(double d, double sdv) {
  const double ad = std::abs(d);
  if (sdv <= 0.0) return ad;
  return sdv * std::sqrt(2.0 / M_PI) * std::exp(-d * d / (2.0 * sdv * sdv)) +
         ad * std::erf(ad / (sdv * std::sqrt(2.0)));
}

// E[min(X^2, cap)] for X ~ N(d, sdv^2).
double trunc_second_moment(double d, double sdv, double cap) {
  if (sdv <= 0.0) return std::min(d * d, cap);
  const double c = std::sqrt(cap);
  const double alpha = (-c - d) / sdv;
  const double beta = (c - d) / sdv;
  const double p_in = norm_cdf(beta) - norm_cdf(alpha);
  const double inner =
      d * d * p_in + 2.0 * d * sdv * (norm_pdf(alpha) - norm_pdf(beta)) +
      sdv * sdv * (p_in + alpha * norm_pdf(alpha) - beta * norm_pdf(beta));
  return inner + cap * (1.0 - p_in);
}

}  // namespace

ProblemInstance generate_synthetic(int m, int n, int r, int a, int b,
                                   double fro_norm, std::uint64_t seed) {
  if (!(r <= a && a <= m && r <= b && b <= n && r >= 1)) {
    throw std::invalid_argument("require 1 <= r <= a <= m and r <= b <= n");
  }
  if (fro_norm <= 0.0) throw std::invalid_argument("fro_norm must be > 0");
  Rng rng(seed);
  const Matrix U = gaussian_matrix(m, r, rng);
  const Matrix V = gaussian_matrix(n, r, rng);
  Matrix R = U * V.transpose();
  R *= fro_norm / R.norm();

  const Matrix X = random_basis_containing(U, a, rng);
  const Matrix Y = random_basis_containing(V, b, rng);
  const Matrix Mstar_raw = X.transpose() * R * Y;
  return build_problem_instance(X, Y, Mstar_raw);
}

Metrics error_metrics(const Matrix& Rhat, const ProblemInstance& instance,
                      const NoiseSpec& noise, double cap) {
  if (cap <= 0.0) throw std::invalid_argument("cap must be > 0");
  const Matrix diff = Rhat - instance.R;
  const double mn = static_cast<double>(diff.size());
  const double sdv = noise.kind == NoiseKind::gaussian ? noise.sdv : 0.0;

  Metrics out;
  out.rmse_fro = diff.norm() / std::sqrt(mn);
  double abs_sum = 0.0, trunc_sum = 0.0;
  for (int j = 0; j < diff.cols(); ++j) {
    for (int i = 0; i < diff.rows(); ++i) {
      abs_sum += folded_mean(diff(i, j), sdv);
      trunc_sum += trunc_second_moment(diff(i, j), sdv, cap);
    }
  }
  out.abs_loss = abs_sum / mn;
  out.trunc_l2 = trunc_sum / mn;
  return out;
}

double empirical_rademacher(const SideInfoPair& side, double Mnorm,
                            std::int64_t N, int mc_trials,
                            std::uint64_t seed) {
  if (Mnorm < 0.0 || N < 1 || mc_trials < 1) {
    throw std::invalid_argument("Mnorm >= 0, N >= 1, mc_trials >= 1 required");
  }
  if (Mnorm == 0.0) return 0.0;
  Rng rng(seed);
  const int m = side.m(), n = side.n();
  double total = 0.0;
  for (int t = 0; t < mc_trials; ++t) {
    Matrix G = Matrix::Zero(side.a(), side.b());
    for (std::int64_t k = 0; k < N; ++k) {
      const int i = static_cast<int>(rng.uniform_index(m));
      const int j = static_cast<int>(rng.uniform_index(n));
      const double eps = rng.uniform() < 0.5 ? -1.0 : 1.0;
      G += eps * side.X.row(i).transpose() * side.Y.row(j);
    }
    total += Mnorm * spectral_norm(G) / static_cast<double>(N);
  }
  return total / mc_trials;
}

}  // namespace imc
