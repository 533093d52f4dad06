#pragma once

#include <cstdint>

#include "imc/side_info.hpp"

namespace imc {

struct BoundParams {
  int m = 0, n = 0, a = 0, b = 0, r = 0;
  double mu = 1.0;
  double mu1 = 0.0;  // <= 0 means unmeasured: substitute mu^2 * mu^2 * r form
  double sigma0 = 1.0;
  double sdv = 0.0;
  double Delta = 0.05;
  double C = 1.0;
  double loss_lipschitz = 1.0;
  double loss_bound = 1.0;
  // Optional probability-budget split; <= 0 means the default Delta/9.
  double delta0 = 0.0, delta1 = 0.0, delta2 = 0.0;
};

struct RecoveryThreshold {
  double N_star_tilde = 0.0;     // O~-form surrogate, constants suppressed
  double N_star_explicit = 0.0;  // fully explicit appendix form
  double q0 = 0.0;
  double Tbar = 0.0;
};

/// Sample-complexity thresholds for exact recovery:
///   Tbar = (128/3) mu mu1 r (a+b) sigma0^-4 log(2mn/delta),
///   N_star_explicit = log[e^6 sigma0^-8 a log(mn/delta)] * Tbar,
///   q0 = 8 log(1/sigma0) + 2 log(a) + 4 + log(tau),
///   N_star_tilde = mu^5 r^2 (a+b) sigma0^-4 log(mn/Delta)  (surrogate).
/// delta is derived from p.Delta via delta_conversion.
RecoveryThreshold exact_recovery_threshold(const BoundParams& p);

enum class BoundVariant { bounded_loss, absolute_loss };

/// Explicit generalization bound at sample size N.  bounded_loss evaluates
/// the L-Lipschitz bounded-loss expression; absolute_loss the absolute-loss
/// corollary.  delta0 = delta1 = delta2 = Delta/9 unless overridden.
double generalization_bound(const BoundParams& p, std::int64_t N,
                            BoundVariant variant);

/// delta = (Delta/2K1) / log(K1 K2 / Delta); guarantees
/// K1 * delta * log(K2/delta) <= Delta (checked numerically on return).
double delta_conversion(double Delta, double K1, double K2);

/// Worst-case Rademacher bound maxrow(X) * maxrow(Y) * Mnorm / sqrt(N),
/// where maxrow is the largest row 2-norm.
double rademacher_bound(const SideInfoPair& side, double Mnorm,
                        std::int64_t N);

}  // namespace imc
