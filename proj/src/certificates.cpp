#include "imc/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "imc/projectors.hpp"
#include "imc/rng.hpp"
#include "imc/xnorms.hpp"

namespace imc {

Matrix dual_certificate_U(const ProblemInstance& instance) {
  const auto& s = instance.side;
  return s.Xbar * s.Sigma1.cwiseInverse().asDiagonal() * instance.A *
         instance.B.transpose() * s.Sigma2.cwiseInverse().asDiagonal() *
         s.Ybar.transpose();
}

CertificateReport golfing_certificate(const ProblemInstance& instance,
                                      const ObservationSet& obs, int q,
                                      std::int64_t batch_size,
                                      std::uint64_t seed, double tau) {
  if (q < 1 || batch_size < 1) {
    throw std::invalid_argument("q and batch_size must be >= 1");
  }
  const std::int64_t need = static_cast<std::int64_t>(q) * batch_size;
  if (static_cast<std::int64_t>(obs.samples.size()) < need) {
    throw std::invalid_argument("insufficient samples for q disjoint batches");
  }
  const int m = obs.m, n = obs.n;
  const double mn = static_cast<double>(m) * n;
  const double T = static_cast<double>(batch_size);

  // Random partition of the first q*batch_size samples into q batches.
  std::vector<std::size_t> perm(static_cast<std::size_t>(need));
  std::iota(perm.begin(), perm.end(), 0u);
  Rng rng(seed);
  for (std::size_t k = perm.size(); k > 1; --k) {
    std::swap(perm[k - 1], perm[rng.uniform_index(k)]);
  }

  const ProjectorContext ctx = ProjectorContext::from_instance(instance);
  const Matrix U = dual_certificate_U(instance);

  Matrix W = U;
  Matrix Ycert = Matrix::Zero(m, n);
  for (int t = 0; t < q; ++t) {
    // Multiplicity-weighted restriction to batch t.
    Matrix PW = Matrix::Zero(m, n);
    for (std::int64_t k = 0; k < batch_size; ++k) {
      const auto& s =
          obs.samples[perm[static_cast<std::size_t>(t) * batch_size + k]];
      PW(s.i, s.j) += W(s.i, s.j);
    }
    Ycert += (mn / T) * PW;
    W -= (mn / T) * project_T(PW, ctx);
  }

  CertificateReport rep;
  rep.Y_cert = Ycert;
  rep.q_used = q;
  if (tau <= 0.0) {
    int maxc = 0;
    for (const auto& [k, c] : obs.counts) maxc = std::max(maxc, c);
    tau = static_cast<double>(maxc);
  }
  rep.tau_used = tau;
  const double sigma0 = instance.side.sigma0;
  rep.cond13_value = (project_T(Ycert, ctx) - U).norm();
  rep.cond13_bound = 0.25 *
                     std::sqrt(static_cast<double>(instance.r) /
                               (3.0 * instance.side.a() * tau)) *
                     sigma0 * sigma0;
  rep.cond14_value = xspec_norm(project_T_perp(Ycert, ctx), instance.side);
  rep.cond14_bound = 0.5;
  rep.passed = rep.cond13_value <= rep.cond13_bound &&
               rep.cond14_value <= rep.cond14_bound;
  return rep;
}

DiagnosticsRecord check_recovery_diagnostics(const Solution& solution,
                                             const ProblemInstance& instance,
                                             const ObservationSet& obs,
                                             double lambda, double sdv,
                                             double C, double delta0) {
  (void)lambda;
  DiagnosticsRecord rec;
  const Matrix diff = solution.Rhat - instance.R;
  Matrix H = Matrix::Zero(diff.rows(), diff.cols());
  for (const auto& [k, c] : obs.counts) {
    const int i = static_cast<int>(k / obs.n);
    const int j = static_cast<int>(k % obs.n);
    H(i, j) = diff(i, j);
  }
  const Matrix Z = diff - H;
  rec.H_nuc = nuclear_norm(H);
  rec.Z_nuc = nuclear_norm(Z);
  rec.total_nuc = nuclear_norm(diff);

  const auto mult = multiplicity_stats(obs, 0.01);
  rec.tau = static_cast<double>(mult.max_count);
  rec.kappa = std::max(static_cast<double>(mult.min_count), 1.0);
  const double N = static_cast<double>(obs.samples.size());
  rec.B = std::sqrt(2.0 * std::log(2.0 * N / delta0));
  const double a = static_cast<double>(instance.side.a());
  const double s0inv2 = 1.0 / (instance.side.sigma0 * instance.side.sigma0);
  const double nu = sdv;

  rec.H_bound = 6.0 * C * std::sqrt(a) * rec.B * nu * std::sqrt(N / rec.kappa);
  rec.Z_bound = 32.0 * C * a * rec.B * rec.B * s0inv2 * nu *
                std::sqrt(3.0 * rec.tau * N / rec.kappa);
  rec.total_bound = 70.0 * C * a * rec.B * rec.B * s0inv2 * nu *
                    std::sqrt(rec.tau * N / rec.kappa);
  rec.H_ok = rec.H_nuc <= rec.H_bound;
  rec.Z_ok = rec.Z_nuc <= rec.Z_bound;
  rec.total_ok = rec.total_nuc <= rec.total_bound;
  return rec;
}

}  // namespace imc
