#include "imc/solvers.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "imc/svt.hpp"

namespace imc {

namespace {

struct AggEntry {
  int i, j;
  double count;
  double mean;
};

std::vector<AggEntry> aggregate_entries(const ObservationSet& obs) {
  std::vector<AggEntry> out;
  out.reserve(obs.aggregate.size());
  for (const auto& [k, agg] : obs.aggregate) {
    out.push_back({static_cast<int>(k / obs.n), static_cast<int>(k % obs.n),
                   static_cast<double>(agg.count), agg.mean});
  }
  return out;
}

// f(M) = (1/N) sum h_ij (mean_ij - (XMY^T)_ij)^2 over the support.
double data_objective(const Matrix& Rm, const std::vector<AggEntry>& entries,
                      double N) {
  double f = 0.0;
  for (const auto& e : entries) {
    const double d = Rm(e.i, e.j) - e.mean;
    f += e.count * d * d;
  }
  return f / N;
}

// grad f(M) = (2/N) X^T G Y with G_ij = h_ij ((XMY^T)_ij - mean_ij).
Matrix data_gradient(const SideInfoPair& side, const Matrix& Rm,
                     const std::vector<AggEntry>& entries, double N) {
  Matrix G = Matrix::Zero(Rm.rows(), Rm.cols());
  for (const auto& e : entries) {
    G(e.i, e.j) = e.count * (Rm(e.i, e.j) - e.mean);
  }
  return (2.0 / N) * side.X.transpose() * G * side.Y;
}

}  // namespace

Solution solve_lagrangian(const SideInfoPair& side, const ObservationSet& obs,
                          double lambda, const SolverOptions& opts) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (obs.samples.empty()) throw std::invalid_argument("empty observation set");
  const double N = static_cast<double>(obs.samples.size());
  const auto entries = aggregate_entries(obs);
  double kappa_max = 0.0;
  for (const auto& e : entries) kappa_max = std::max(kappa_max, e.count);

  const double normX = side.X.jacobiSvd().singularValues()(0);
  const double normY = side.Y.jacobiSvd().singularValues()(0);
  const double L_bound =
      std::max(2.0 * kappa_max * normX * normX * normY * normY / N, 1e-12);

  const auto objective = [&](const Matrix& M, double* data_part = nullptr) {
    const Matrix Rm = side.X * M * side.Y.transpose();
    const double f = data_objective(Rm, entries, N);
    if (data_part) *data_part = f;
    return f + lambda * M.jacobiSvd().singularValues().sum();
  };

  Solution sol;
  Matrix M = Matrix::Zero(side.a(), side.b());
  Matrix Yk = M;  // extrapolated point (equals M when accel = false)
  double t_mom = 1.0;
  double L = L_bound;
  double prev_obj = objective(M);
  sol.objective_trace.push_back(prev_obj);

  for (int it = 1; it <= opts.max_iters; ++it) {
    const Matrix Ry = side.X * Yk * side.Y.transpose();
    const double fy = data_objective(Ry, entries, N);
    const Matrix grad = data_gradient(side, Ry, entries, N);

    Matrix Mnext;
    if (opts.step_rule == StepRule::fixed) {
      Mnext = svt(Yk - grad / L, lambda / L);
    } else {
      // Backtracking on L, starting from the Lipschitz bound (which is
      // exact for this quadratic, so this normally accepts immediately).
      L = L_bound;
      for (int bt = 0; bt < 60; ++bt) {
        Mnext = svt(Yk - grad / L, lambda / L);
        const Matrix D = Mnext - Yk;
        const Matrix Rn = side.X * Mnext * side.Y.transpose();
        const double fn = data_objective(Rn, entries, N);
        const double quad =
            fy + (grad.array() * D.array()).sum() + 0.5 * L * D.squaredNorm();
        if (fn <= quad + 1e-14 * std::max(1.0, std::abs(fn))) break;
        L *= 2.0;
      }
    }

    const Matrix Mprev = M;
    M = Mnext;
    if (opts.accel) {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom));
      Yk = M + ((t_mom - 1.0) / t_next) * (M - Mprev);
      t_mom = t_next;
    } else {
      Yk = M;
    }

    const double obj = objective(M);
    sol.objective_trace.push_back(obj);
    sol.iters = it;

    // Prox-gradient fixed-point residual at M, scale-normalized.
    const Matrix Rm = side.X * M * side.Y.transpose();
    const Matrix gM = data_gradient(side, Rm, entries, N);
    const Matrix fixed_point = svt(M - gM / L_bound, lambda / L_bound);
    sol.kkt_residual =
        L_bound * (M - fixed_point).norm() / (1.0 + M.norm() * L_bound);

    const double rel_change =
        std::abs(prev_obj - obj) / std::max(1.0, std::abs(prev_obj));
    prev_obj = obj;
    if (rel_change <= opts.tol_rel_obj && sol.kkt_residual <= opts.tol_feas) {
      sol.converged = true;
      break;
    }
  }

  sol.Mhat = M;
  sol.Rhat = side.X * sol.Mhat * side.Y.transpose();
  return sol;
}

Solution solve_exact(const SideInfoPair& side, const ObservationSet& obs,
                     const SolverOptions& opts) {
  if (obs.samples.empty()) throw std::invalid_argument("empty observation set");
  const int a = side.a(), b = side.b();

  // Consistency of repeated samples, and one constraint per distinct entry.
  for (const auto& s : obs.samples) {
    const auto it = obs.aggregate.find(obs.key(s.i, s.j));
    if (std::abs(s.value - it->second.mean) > opts.tol_feas) {
      throw std::invalid_argument("infeasible: contradictory observations");
    }
  }
  const auto entries = aggregate_entries(obs);
  const int s_cnt = static_cast<int>(entries.size());

  // Constraint matrix: row for entry (i,j) is kron(y_j, x_i) acting on
  // vec(M) (column-major), so A vec(M) = [(XMY^T)_ij].
  Matrix A(s_cnt, a * b);
  Vector v(s_cnt);
  for (int row = 0; row < s_cnt; ++row) {
    const auto& e = entries[row];
    const Vector xi = side.X.row(e.i).transpose();
    const Vector yj = side.Y.row(e.j).transpose();
    for (int q = 0; q < b; ++q) {
      A.block(row, q * a, 1, a) = (yj(q) * xi).transpose();
    }
    v(row) = e.mean;
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);

  const auto project_affine = [&](const Matrix& Z) {
    Eigen::Map<const Vector> z(Z.data(), a * b);
    const Vector corr = cod.solve(A * z - v);
    Vector w = z - corr;
    return Matrix(Eigen::Map<Matrix>(w.data(), a, b));
  };
  const auto feas_inf = [&](const Matrix& Z) {
    Eigen::Map<const Vector> z(Z.data(), a * b);
    return (A * z - v).cwiseAbs().maxCoeff();
  };

  const double data_scale =
      std::max(v.cwiseAbs().maxCoeff(), 1e-12);
  const double rho = 1.0 / data_scale;  // SVT threshold 1/rho ~ data scale

  Solution sol;
  Matrix W = project_affine(Matrix::Zero(a, b));  // feasible start
  Matrix M = W;
  Matrix U = Matrix::Zero(a, b);
  double prev_nuc = M.jacobiSvd().singularValues().sum();
  sol.objective_trace.push_back(prev_nuc);

  for (int it = 1; it <= opts.max_iters; ++it) {
    M = svt(W - U, 1.0 / rho);
    W = project_affine(M + U);
    U += M - W;

    const double nuc = M.jacobiSvd().singularValues().sum();
    sol.objective_trace.push_back(nuc);
    sol.iters = it;
    const double feas = feas_inf(M);
    sol.kkt_residual = feas;
    const double rel_change =
        std::abs(nuc - prev_nuc) / std::max(1.0, std::abs(prev_nuc));
    prev_nuc = nuc;
    if (feas <= opts.tol_feas && rel_change <= opts.tol_rel_obj) {
      sol.converged = true;
      break;
    }
  }

  sol.Mhat = sol.converged ? M : project_affine(M);
  sol.kkt_residual = feas_inf(sol.Mhat);
  sol.Rhat = side.X * sol.Mhat * side.Y.transpose();
  return sol;
}

LambdaInterval lambda_from_theory(double sdv, double sigma0, int a,
                                  std::int64_t N, double C) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (sdv < 0.0) throw std::invalid_argument("sdv must be >= 0");
  if (C < 1.0) throw std::invalid_argument("C must be >= 1");
  const double base = sdv * sigma0 * sigma0 /
                      std::sqrt(static_cast<double>(a) * static_cast<double>(N));
  return {base / C, base, base * C};
}

std::pair<double, std::vector<double>> cross_validate_lambda(
    const SideInfoPair& side, const ObservationSet& train,
    const ObservationSet& val, const std::vector<double>& grid,
    const SolverOptions& opts) {
  if (grid.empty()) throw std::invalid_argument("lambda grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("lambda grid must be sorted ascending");
  }
  std::vector<double> errors;
  errors.reserve(grid.size());
  double best_lambda = grid.front();
  double best_err = std::numeric_limits<double>::infinity();
  for (double lambda : grid) {
    const Solution sol = solve_lagrangian(side, train, lambda, opts);
    double sq = 0.0;
    for (const auto& s : val.samples) {
      const double d = sol.Rhat(s.i, s.j) - s.value;
      sq += d * d;
    }
    const double rmse = std::sqrt(sq / static_cast<double>(val.samples.size()));
    errors.push_back(rmse);
    if (rmse < best_err) {  // strict: ties keep the smaller lambda
      best_err = rmse;
      best_lambda = lambda;
    }
  }
  return {best_lambda, errors};
}

}  // namespace imc
