#pragma once

#include "imc/problem.hpp"

namespace imc {

/// Smallest constants making each incoherence inequality tight, measured on
/// a concrete instance.
///
/// mu_X is the smallest mu with max_ij |Xbar_ij| <= sqrt(mu/m), i.e.
/// m * max |Xbar|^2; likewise mu_Y, mu_A (a * max|A|^2), mu_B.  mu is the
/// max of the four.  mu1 is the joint constant, the smallest value with
/// max_ij |Xbar Sigma1^-1 A B^T Sigma2^-1 Ybar^T|_ij <= sqrt(mu1 r/(mn)) / sigma0^2.
struct IncoherenceReport {
  double mu_X = 0.0;
  double mu_Y = 0.0;
  double mu_A = 0.0;
  double mu_B = 0.0;
  double mu = 0.0;
  double mu1 = 0.0;
  double mu1_upper = 0.0;  // mubar^2 mu^2 r with mubar = max(mu_A, mu_B)
};

IncoherenceReport incoherence_mu(const ProblemInstance& instance);

}  // namespace imc
