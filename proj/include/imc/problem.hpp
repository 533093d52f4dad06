#pragma once

#include "imc/side_info.hpp"

namespace imc {

/// Ground-truth problem: side information plus the core matrix M* (in
/// canonical side coordinates), with R = X M* Y^T, the SVD of M* and the
/// measured incoherence constants cached.
struct ProblemInstance {
  SideInfoPair side;
  Matrix Mstar;  // a x b
  Matrix R;      // m x n
  int r = 0;     // rank of Mstar
  Matrix A;      // a x r, orthonormal columns
  Vector D;      // r singular values, descending
  Matrix B;      // b x r, orthonormal columns
  double mu = 0.0;   // strict-form incoherence constant
  double mu1 = 0.0;  // joint incoherence constant

  int m() const { return side.m(); }
  int n() const { return side.n(); }
  int a() const { return side.a(); }
  int b() const { return side.b(); }
};

/// Build a ProblemInstance from raw side information and a core matrix
/// expressed against the raw X, Y.  The side is canonicalized (orthogonal
/// columns, top singular value 1) and Mstar carried into the canonical
/// coordinates so that R is unchanged.
ProblemInstance build_problem_instance(const Matrix& X_raw,
                                       const Matrix& Y_raw,
                                       const Matrix& Mstar_raw);

/// Same but for side information already in canonical form (skips the
/// change of basis on Mstar).  Used by the synthetic generator.
ProblemInstance build_problem_instance_canonical(SideInfoPair side,
                                                 Matrix Mstar);

}  // namespace imc
