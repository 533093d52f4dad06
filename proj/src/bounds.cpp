#include "imc/bounds.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace imc {

namespace {

double mu1_or_bound(const BoundParams& p) {
  if (p.mu1 > 0.0) return p.mu1;
  // Appendix reduction mu1 <= mubar^2 mu^2 r with mubar <= mu.
  return p.mu * p.mu * p.mu * p.mu * p.r;
}

}  // namespace

RecoveryThreshold exact_recovery_threshold(const BoundParams& p) {
  if (!(p.Delta > 0.0 && p.Delta < 1.0)) {
    throw std::invalid_argument("Delta must be in (0,1)");
  }
  const double mn = static_cast<double>(p.m) * p.n;
  const double s0 = p.sigma0;
  const double mu1 = mu1_or_bound(p);

  // q factor in the explicit threshold (used for the probability budget).
  const auto q_of_delta = [&](double delta) {
    return std::log(std::exp(6.0) * std::pow(s0, -8.0) * p.a *
                    std::log(mn / delta));
  };
  // delta from Delta: budget 1-(5q+1)delta, union over mn-scale events.
  const double delta =
      delta_conversion(p.Delta, 5.0 * q_of_delta(p.Delta) + 1.0, mn);

  RecoveryThreshold out;
  out.Tbar = (128.0 / 3.0) * p.mu * mu1 * p.r * (p.a + p.b) *
             std::pow(s0, -4.0) * std::log(2.0 * mn / delta);
  out.N_star_explicit = q_of_delta(delta) * out.Tbar;
  const double tau_surrogate = 5.0 * std::log(2.0 * mn / delta);
  out.q0 = 8.0 * std::log(1.0 / s0) + 2.0 * std::log(static_cast<double>(p.a)) +
           4.0 + std::log(tau_surrogate);
  out.N_star_tilde = std::pow(p.mu, 5.0) * p.r * p.r * (p.a + p.b) *
                     std::pow(s0, -4.0) * std::log(mn / p.Delta);
  return out;
}

double generalization_bound(const BoundParams& p, std::int64_t N,
                            BoundVariant variant) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  const double Nd = static_cast<double>(N);
  const double mn = static_cast<double>(p.m) * p.n;
  const double d0 = p.delta0 > 0.0 ? p.delta0 : p.Delta / 9.0;
  const double d1 = p.delta1 > 0.0 ? p.delta1 : p.Delta / 9.0;
  const double d2 = p.delta2 > 0.0 ? p.delta2 : p.Delta / 9.0;
  const double a32_sqrtb =
      std::pow(static_cast<double>(p.a), 1.5) * std::sqrt(p.b);
  const double mu_s0 = p.mu / (p.sigma0 * p.sigma0);

  if (variant == BoundVariant::bounded_loss) {
    const double logN2d2 = std::log(Nd / (2.0 * d2));
    const double theta = 2.0 * logN2d2 + (8.0 / 3.0) *
                                             std::log(2.0 * mn / d2) *
                                             std::sqrt(2.0 * logN2d2);
    const double leading = 500.0 * p.C * p.loss_lipschitz * a32_sqrtb * mu_s0 *
                           p.sdv * std::sqrt(theta) *
                           std::log(2.0 * Nd / d0) * std::sqrt(logN2d2 / Nd);
    const double tail = p.loss_bound * 4.0 * std::log(1.0 / d1) / (3.0 * Nd);
    return leading + tail;
  }
  const double Theta = 2.0 * std::log(Nd * mn / (d2 * d2)) *
                       std::log(2.0 * Nd / d0) * std::log(1.0 / d1);
  return 700.0 * p.C * a32_sqrtb * mu_s0 * p.sdv * Theta / std::sqrt(Nd);
}

double delta_conversion(double Delta, double K1, double K2) {
  if (!(Delta > 0.0 && Delta < 1.0)) {
    throw std::invalid_argument("Delta must be in (0,1)");
  }
  if (!(K1 > 1.0 && K2 > 1.0)) {
    throw std::invalid_argument("K1, K2 must be > 1");
  }
  const double delta = (Delta / (2.0 * K1)) / std::log(K1 * K2 / Delta);
  assert(K1 * delta * std::log(K2 / delta) <= Delta * (1.0 + 1e-12));
  return delta;
}

double rademacher_bound(const SideInfoPair& side, double Mnorm,
                        std::int64_t N) {
  if (Mnorm < 0.0 || N < 1) {
    throw std::invalid_argument("Mnorm >= 0 and N >= 1 required");
  }
  const double x = side.X.rowwise().norm().maxCoeff();
  const double y = side.Y.rowwise().norm().maxCoeff();
  return x * y * Mnorm / std::sqrt(static_cast<double>(N));
}

}  // namespace imc
