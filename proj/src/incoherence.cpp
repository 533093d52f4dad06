#include "imc/incoherence.hpp"

namespace imc {

IncoherenceReport incoherence_mu(const ProblemInstance& instance) {
  const auto& side = instance.side;
  const double m = side.m(), n = side.n(), a = side.a(), b = side.b();

  IncoherenceReport rep;
  rep.mu_X = m * side.Xbar.cwiseAbs().maxCoeff() *
             side.Xbar.cwiseAbs().maxCoeff();
  rep.mu_Y = n * side.Ybar.cwiseAbs().maxCoeff() *
             side.Ybar.cwiseAbs().maxCoeff();
  rep.mu_A =
      a * instance.A.cwiseAbs().maxCoeff() * instance.A.cwiseAbs().maxCoeff();
  rep.mu_B =
      b * instance.B.cwiseAbs().maxCoeff() * instance.B.cwiseAbs().maxCoeff();
  rep.mu = std::max({rep.mu_X, rep.mu_Y, rep.mu_A, rep.mu_B});

  // Joint constant from the Appendix-B display: the smallest mu1 with
  // |Xbar S1^-1 A B^T S2^-1 Ybar^T|_inf <= sqrt(mu1 r / (mn)) sigma0^-2.
  const Matrix core = side.Sigma1.cwiseInverse().asDiagonal() * instance.A *
                      instance.B.transpose() *
                      side.Sigma2.cwiseInverse().asDiagonal();
  const double linf = (side.Xbar * core * side.Ybar.transpose())
                          .cwiseAbs()
                          .maxCoeff();
  const double s0 = side.sigma0;
  const double r = std::max(instance.r, 1);
  rep.mu1 = linf * linf * m * n * (s0 * s0) * (s0 * s0) / r;

  const double mubar = std::max(rep.mu_A, rep.mu_B);
  const double mu_side = std::max(rep.mu_X, rep.mu_Y);
  rep.mu1_upper = mubar * mubar * mu_side * mu_side * r;
  return rep;
}

}  // namespace imc
