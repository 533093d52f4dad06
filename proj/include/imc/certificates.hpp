#pragma once

#include <cstdint>

#include "imc/observations.hpp"
#include "imc/problem.hpp"
#include "imc/solvers.hpp"

namespace imc {

/// Exact dual certificate U = Xbar Sigma1^-1 A B^T Sigma2^-1 Ybar^T.
/// Satisfies X^T U Y = A B^T, xspec(U) = 1, <R, U> = xnuc(R).
Matrix dual_certificate_U(const ProblemInstance& instance);

struct CertificateReport {
  Matrix Y_cert;              // m x n, supported on observed entries
  double cond13_value = 0.0;  // ||P_T(Ycert) - U||_F
  double cond13_bound = 0.0;  // (1/4) sqrt(r/(3 a tau)) sigma0^2
  double cond14_value = 0.0;  // xspec(P_Tperp(Ycert))
  double cond14_bound = 0.5;
  double tau_used = 0.0;
  int q_used = 0;
  bool passed = false;
};

/// Golfing construction of the approximate certificate.  Partitions the
/// first q*batch_size samples into q disjoint random batches (seeded), runs
///   W_1 = U,  Ycert_t = (mn/T) sum_{i<=t} P_{Omega_i}(W_i),
///   W_{t+1} = W_t - (mn/T) P_T P_{Omega_t}(W_t),
/// and evaluates both Lemma-C.1 condition values for Ycert = Ycert_q.
/// tau <= 0 selects the default: the observed max multiplicity.
CertificateReport golfing_certificate(const ProblemInstance& instance,
                                      const ObservationSet& obs, int q,
                                      std::int64_t batch_size,
                                      std::uint64_t seed, double tau = 0.0);

struct DiagnosticsRecord {
  double H_nuc = 0.0;      // ||H||_*, H = (Rhat - R) on observed entries
  double Z_nuc = 0.0;      // ||Z||_*, Z = (Rhat - R) off the support
  double total_nuc = 0.0;  // ||Rhat - R||_*
  double H_bound = 0.0;    // 6 C sqrt(a) B nu sqrt(N/kappa)
  double Z_bound = 0.0;    // 32 C a B^2 sigma0^-2 nu sqrt(3 tau N / kappa)
  double total_bound = 0.0;  // 70 C a B^2 sigma0^-2 nu sqrt(tau N / kappa)
  bool H_ok = false;
  bool Z_ok = false;
  bool total_ok = false;
  double B = 0.0;      // sqrt(2 log(2N/delta0))
  double kappa = 1.0;  // max(min multiplicity, 1)
  double tau = 0.0;    // observed max multiplicity
};

/// Lemma-C.1 error decomposition and bound check for a Lagrangian solution.
/// delta0 defaults to 0.01; C defaults to 1.
DiagnosticsRecord check_recovery_diagnostics(const Solution& solution,
                                             const ProblemInstance& instance,
                                             const ObservationSet& obs,
                                             double lambda, double sdv,
                                             double C = 1.0,
                                             double delta0 = 0.01);

}  // namespace imc
