#include "imc/problem.hpp"

#include <Eigen/SVD>
#include <stdexcept>

#include "imc/incoherence.hpp"

namespace imc {

namespace {

constexpr double kRankTol = 1e-10;

void finish_instance(ProblemInstance& inst) {
  const auto& side = inst.side;
  if (inst.Mstar.rows() != side.a() || inst.Mstar.cols() != side.b()) {
    throw std::invalid_argument("core matrix dimension mismatch");
  }
  inst.R = side.X * inst.Mstar * side.Y.transpose();

  Eigen::JacobiSVD<Matrix> svd(inst.Mstar,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  int r = 0;
  const double tol = kRankTol * std::max(s.size() > 0 ? s(0) : 0.0, 1e-300);
  while (r < s.size() && s(r) > tol) ++r;
  inst.r = r;
  Matrix U = svd.matrixU().leftCols(r);
  Matrix V = svd.matrixV().leftCols(r);
  fix_svd_signs(U, V);
  inst.A = U;
  inst.B = V;
  inst.D = s.head(r);

  const IncoherenceReport rep = incoherence_mu(inst);
  inst.mu = rep.mu;
  inst.mu1 = rep.mu1;
}

}  // namespace

ProblemInstance build_problem_instance(const Matrix& X_raw,
                                       const Matrix& Y_raw,
                                       const Matrix& Mstar_raw) {
  ProblemInstance inst;
  inst.side = make_side_info(X_raw, Y_raw);
  if (Mstar_raw.rows() != X_raw.cols() || Mstar_raw.cols() != Y_raw.cols()) {
    throw std::invalid_argument("core matrix dimension mismatch");
  }
  inst.Mstar = inst.side.to_canonical_core(Mstar_raw);
  finish_instance(inst);
  return inst;
}

ProblemInstance build_problem_instance_canonical(SideInfoPair side,
                                                 Matrix Mstar) {
  ProblemInstance inst;
  inst.side = std::move(side);
  inst.Mstar = std::move(Mstar);
  finish_instance(inst);
  return inst;
}

}  // namespace imc
