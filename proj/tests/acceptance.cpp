// Acceptance suite: one criterion per invocation (argv[1] = 1..9), each
// printing a single "[criterion N] PASS|FAIL" line.  With no argument all
// nine run in sequence.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "imc/bounds.hpp"
#include "imc/certificates.hpp"
#include "imc/incoherence.hpp"
#include "imc/projectors.hpp"
#include "imc/rng.hpp"
#include "imc/solvers.hpp"
#include "imc/svt.hpp"
#include "imc/sweep.hpp"
#include "imc/synthetic.hpp"
#include "imc/xnorms.hpp"

using namespace imc;

namespace {

Matrix random_matrix(int rows, int cols, Rng& rng) {
  Matrix M(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) M(i, j) = rng.gaussian();
  return M;
}

bool freq_at_least(int hits, int trials, double p_floor) {
  const double sd =
      std::sqrt(p_floor * (1.0 - p_floor) * static_cast<double>(trials));
  return hits >= p_floor * trials - 3.0 * sd;
}

bool freq_at_most(int hits, int trials, double p_cap) {
  const double sd =
      std::sqrt(p_cap * (1.0 - p_cap) * static_cast<double>(trials));
  return hits <= p_cap * trials + 3.0 * sd;
}

// Criterion 1: norm duality and attainment at the dual certificate.
bool criterion1() {
  Rng rng(101);
  for (int t = 0; t < 500; ++t) {
    const int m = 6 + static_cast<int>(rng.uniform_index(7));   // 6..12
    const int n = 6 + static_cast<int>(rng.uniform_index(7));
    const int a = 2 + static_cast<int>(rng.uniform_index(4));   // 2..5
    const int b = 2 + static_cast<int>(rng.uniform_index(4));
    const int r = 1 + static_cast<int>(rng.uniform_index(
                          static_cast<std::uint64_t>(std::min(a, b))));
    const ProblemInstance inst =
        generate_synthetic(m, n, r, a, b, 5.0, rng.next_u64());
    const Matrix A =
        inst.side.X * random_matrix(a, b, rng) * inst.side.Y.transpose();
    const Matrix B = random_matrix(m, n, rng);
    const double inner = std::abs((A.array() * B.array()).sum());
    if (inner >
        xnuc_norm(A, inst.side) * xspec_norm(B, inst.side) * (1.0 + 1e-8)) {
      return false;
    }
    const Matrix U = dual_certificate_U(inst);
    const double attained = (inst.R.array() * U.array()).sum();
    const double xnuc = xnuc_norm(inst.R, inst.side);
    if (std::abs(attained - xnuc) > 1e-8 * std::max(1.0, xnuc)) return false;
  }
  return true;
}

// Criterion 2: prox oracle (subgradient optimality + non-expansiveness).
bool criterion2() {
  Rng rng(202);
  for (int t = 0; t < 200; ++t) {
    const Matrix M = random_matrix(5, 4, rng);
    const double tau = 0.05 + rng.uniform();
    const Matrix W = svt(M, tau);
    const Matrix G = (M - W) / tau;  // must lie in the subdifferential
    if (spectral_norm(G) > 1.0 + 1e-8) return false;
    if (std::abs((G.array() * W.array()).sum() - nuclear_norm(W)) > 1e-8) {
      return false;
    }
  }
  for (int t = 0; t < 200; ++t) {
    const Matrix A = random_matrix(6, 5, rng);
    const Matrix B = random_matrix(6, 5, rng);
    const double tau = rng.uniform() * 2.0;
    if ((svt(A, tau) - svt(B, tau)).norm() > (A - B).norm() + 1e-12) {
      return false;
    }
  }
  return true;
}

// Criterion 3: exact recovery above the measured certificate threshold,
// failure far below the parameter count.
bool criterion3() {
  const int m = 60, n = 60, r = 5, a = 20, b = 20;
  const ProblemInstance probe =
      generate_synthetic(m, n, r, a, b, 60.0, 3001);
  const double tau_guess = 5.0 * std::log(2.0 * m * n / 0.01);
  const int q = static_cast<int>(std::ceil(
      2.0 * std::log(static_cast<double>(a)) + 4.0 + std::log(tau_guess)));

  // Measured certificate-passing threshold: smallest N on a geometric grid
  // where the golfing certificate passes in 2 of 3 trials.
  std::int64_t N_thr = 0;
  for (std::int64_t N = 3600; N <= 3600LL * 256; N *= 2) {
    int passes = 0;
    for (int t = 0; t < 3; ++t) {
      const ObservationSet obs = sample_observations(
          probe, N, NoiseSpec::none(), 3100 + 10 * t + N % 7);
      const CertificateReport rep = golfing_certificate(
          probe, obs, q, N / q, 3200 + t);
      if (rep.passed) ++passes;
    }
    if (passes >= 2) {
      N_thr = N;
      break;
    }
  }
  if (N_thr == 0) {
    std::cerr << "criterion 3: no certificate-passing N found\n";
    return false;
  }
  std::cerr << "criterion 3: measured certificate threshold N = " << N_thr
            << " (q = " << q << ")\n";

  int hits = 0;
  const int trials = 50;
  SolverOptions opts;
  opts.tol_feas = 1e-9;
  opts.tol_rel_obj = 1e-10;
  for (int t = 0; t < trials; ++t) {
    const ProblemInstance inst =
        generate_synthetic(m, n, r, a, b, 60.0, 3300 + t);
    const ObservationSet obs =
        sample_observations(inst, 2 * N_thr, NoiseSpec::none(), 3400 + t);
    const Solution sol = solve_exact(inst.side, obs, opts);
    if ((sol.Rhat - inst.R).norm() / inst.R.norm() <= 1e-4) ++hits;
  }
  if (!freq_at_least(hits, trials, 0.9)) {
    std::cerr << "criterion 3: recovery rate " << hits << "/" << trials
              << "\n";
    return false;
  }

  int failures = 0;
  for (int t = 0; t < trials; ++t) {
    const ProblemInstance inst =
        generate_synthetic(m, n, r, a, b, 60.0, 3500 + t);
    const ObservationSet obs = sample_observations(
        inst, a * r / 2, NoiseSpec::none(), 3600 + t);
    const Solution sol = solve_exact(inst.side, obs);
    if ((sol.Rhat - inst.R).norm() / inst.R.norm() >= 0.1) ++failures;
  }
  if (!freq_at_least(failures, trials, 0.9)) {
    std::cerr << "criterion 3: under-determined failure rate " << failures
              << "/" << trials << "\n";
    return false;
  }
  return true;
}

// Criterion 4: golfing certificate pass frequency at q = q0, batch Tbar.
bool criterion4() {
  const int m = 40, n = 40, r = 3, a = 12, b = 12;
  const double delta = 0.01;
  const ProblemInstance inst = generate_synthetic(m, n, r, a, b, 40.0, 4001);
  const IncoherenceReport inc = incoherence_mu(inst);
  const double mn = static_cast<double>(m) * n;
  const double s0 = inst.side.sigma0;
  const double Tbar = (128.0 / 3.0) * inc.mu * inc.mu1 * r * (a + b) *
                      std::pow(s0, -4.0) * std::log(2.0 * mn / delta);
  // q0 = 8 log(1/sigma0) + 2 log a + 4 + log tau, with tau solved by one
  // fixed-point pass of the tau5 estimate at N = q Tbar.
  double tau = 5.0 * std::log(2.0 * mn / delta);
  int q = 0;
  for (int pass = 0; pass < 3; ++pass) {
    q = static_cast<int>(std::ceil(8.0 * std::log(1.0 / s0) +
                                   2.0 * std::log(static_cast<double>(a)) +
                                   4.0 + std::log(tau)));
    const double N = q * Tbar;
    tau = N / mn + (8.0 / 3.0) * std::log(2.0 * mn / delta) * std::sqrt(N / mn);
  }
  const std::int64_t batch = static_cast<std::int64_t>(std::ceil(Tbar));
  const std::int64_t N = static_cast<std::int64_t>(q) * batch;
  std::cerr << "criterion 4: Tbar = " << batch << ", q = " << q
            << ", N = " << N << "\n";

  const double floor = std::max(0.0, 1.0 - 5.0 * q * delta);
  int passes = 0;
  const int trials = 200;
  const ProjectorContext ctx = ProjectorContext::from_instance(inst);
  const Matrix U = dual_certificate_U(inst);
  const double T = static_cast<double>(batch);
  for (int t = 0; t < trials; ++t) {
    // N here is too large to materialize a sample list, so each batch's
    // per-entry multiplicities are drawn directly: a batch of T i.i.d.
    // uniform draws has multinomial(T, uniform) counts, sampled exactly by
    // the conditional-binomial decomposition.  The golfing recursion itself
    // is identical to golfing_certificate.
    std::mt19937_64 gen(combine_seed(4100, static_cast<std::uint64_t>(t)));
    Matrix W = U;
    Matrix Ycert = Matrix::Zero(m, n);
    Eigen::ArrayXXd total = Eigen::ArrayXXd::Zero(m, n);
    for (int step = 0; step < q; ++step) {
      Eigen::ArrayXXd h = Eigen::ArrayXXd::Zero(m, n);
      std::int64_t remaining = batch;
      std::int64_t cells_left = static_cast<std::int64_t>(m) * n;
      for (int i = 0; i < m && remaining > 0; ++i) {
        for (int j = 0; j < n && remaining > 0; ++j) {
          std::binomial_distribution<std::int64_t> bin(remaining,
                                                       1.0 / cells_left);
          const std::int64_t c = (cells_left == 1) ? remaining : bin(gen);
          h(i, j) = static_cast<double>(c);
          remaining -= c;
          --cells_left;
        }
      }
      total += h;
      const Matrix PW = (h * W.array()).matrix();
      Ycert += (mn / T) * PW;
      W -= (mn / T) * project_T(PW, ctx);
    }
    const double tau_obs = std::max(1.0, total.maxCoeff());
    const double cond13 = (project_T(Ycert, ctx) - U).norm();
    const double cond13_bound =
        0.25 * std::sqrt(r / (3.0 * a * tau_obs)) * s0 * s0;
    const double cond14 = xspec_norm(project_T_perp(Ycert, ctx), inst.side);
    if (cond13 <= cond13_bound && cond14 <= 0.5) ++passes;
  }
  std::cerr << "criterion 4: pass rate " << passes << "/" << trials
            << " (floor " << floor << ")\n";
  return freq_at_least(passes, trials, floor);
}

// Criterion 5: operator deviation vs the concentration RHS.
bool criterion5() {
  const int m = 20, n = 20, r = 2, aa = 6, bb = 6;
  const double delta = 0.05;
  const ProblemInstance inst = generate_synthetic(m, n, r, aa, bb, 20.0, 5001);
  const ProjectorContext ctx = ProjectorContext::from_instance(inst);
  const double mu = inst.mu;
  const std::int64_t N = 100000;
  const double rhs =
      std::sqrt((8.0 / 3.0) * std::log((m + n) / delta) * r * mu * mu *
                (aa + bb) / static_cast<double>(N));
  int violations = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    const ObservationSet obs =
        sample_observations(inst, N, NoiseSpec::none(), 5100 + t);
    const DeviationEstimate est =
        operator_deviation_T(ctx, obs, DeviationMode::tangent, 5300 + t);
    if (est.value > rhs) ++violations;
  }
  std::cerr << "criterion 5: rhs = " << rhs << ", violations = " << violations
            << "/" << trials << "\n";
  return freq_at_most(violations, trials, delta);
}

// Criterion 6: the two-phase error curve.
bool criterion6() {
  SweepConfig cfg;
  cfg.m = cfg.n = 60;
  cfg.r = 5;
  cfg.a = cfg.b = 20;
  cfg.fro_norm = 60.0;
  cfg.sigma_list = {0.0, 0.05, 0.15, 0.3};
  cfg.N_grid = {100, 200, 400, 700, 1100, 1700, 2400, 2880};
  cfg.trials = 6;
  cfg.lambda_grid = {1e-6, 1e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
  cfg.val_fraction = 0.2;
  cfg.seed = 6001;
  cfg.solver_opts.max_iters = 2000;
  cfg.solver_opts.tol_rel_obj = 1e-10;
  cfg.solver_opts.tol_feas = 1e-6;
  const SweepResult result = run_sweep(cfg);

  // Mean rmse curve per sigma, indexed over the N grid.
  std::map<double, std::vector<double>> curves;
  std::map<double, std::vector<int>> counts;
  for (double s : cfg.sigma_list) {
    curves[s].assign(cfg.N_grid.size(), 0.0);
    counts[s].assign(cfg.N_grid.size(), 0);
  }
  for (const auto& row : result.rows) {
    if (std::isnan(row.rmse_fro)) continue;
    const auto it =
        std::find(cfg.N_grid.begin(), cfg.N_grid.end(), row.N);
    const std::size_t idx = it - cfg.N_grid.begin();
    curves[row.sigma][idx] += row.rmse_fro;
    counts[row.sigma][idx] += 1;
  }
  for (double s : cfg.sigma_list) {
    for (std::size_t k = 0; k < cfg.N_grid.size(); ++k) {
      if (counts[s][k] == 0) return false;
      curves[s][k] /= counts[s][k];
    }
  }

  // (a) non-convexity: some noisy curve has a second-difference sign change.
  bool nonconvex = false;
  for (double s : {0.05, 0.15}) {
    const auto& c = curves[s];
    std::vector<double> dd;
    for (std::size_t k = 2; k < c.size(); ++k) {
      dd.push_back(c[k] - 2.0 * c[k - 1] + c[k - 2]);
    }
    for (std::size_t k = 1; k < dd.size(); ++k) {
      if (dd[k] * dd[k - 1] < 0.0) nonconvex = true;
    }
  }
  if (!nonconvex) {
    std::cerr << "criterion 6a: no curvature sign change\n";
    return false;
  }

  // (b) threshold behavior: max step drop >= 3x the median step drop.
  bool threshold_shape = false;
  for (double s : {0.05, 0.15}) {
    const auto& c = curves[s];
    std::vector<double> drops;
    for (std::size_t k = 1; k < c.size(); ++k) {
      drops.push_back(c[k - 1] - c[k]);
    }
    std::vector<double> sorted = drops;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                     sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double biggest = *std::max_element(drops.begin(), drops.end());
    if (median > 0.0 && biggest >= 3.0 * median) threshold_shape = true;
  }
  if (!threshold_shape) {
    std::cerr << "criterion 6b: no threshold-like drop\n";
    return false;
  }

  // (c) post-threshold error scales with sigma.
  const double ratio =
      curves[0.3].back() / curves[0.15].back();
  if (!(ratio >= 1.5 && ratio <= 2.5)) {
    std::cerr << "criterion 6c: largest-N ratio " << ratio << "\n";
    return false;
  }

  // (d) noiseless curve reaches exact recovery past its threshold.
  const double rel_unit =
      cfg.fro_norm / std::sqrt(static_cast<double>(cfg.m) * cfg.n);
  const auto& c0 = curves[0.0];
  std::size_t k0 = c0.size();
  for (std::size_t k = 0; k < c0.size(); ++k) {
    bool all_below = true;
    for (std::size_t j = k; j < c0.size(); ++j) {
      if (c0[j] > 1e-3 * rel_unit) all_below = false;
    }
    if (all_below) {
      k0 = k;
      break;
    }
  }
  if (k0 == c0.size()) {
    std::cerr << "criterion 6d: noiseless curve never reaches 1e-3\n";
    return false;
  }
  std::cerr << "criterion 6: noiseless threshold at N = " << cfg.N_grid[k0]
            << ", sigma ratio " << ratio << "\n";
  return true;
}

// Criterion 7: bound calculators.
bool criterion7() {
  Rng rng(7001);
  for (int t = 0; t < 1000; ++t) {
    const double Delta = 1e-4 + rng.uniform() * 0.97;
    const double K1 = 1.0 + rng.uniform() * 99.0;
    const double K2 = 1.0 + rng.uniform() * 1e6;
    const double d = delta_conversion(Delta, K1, K2);
    if (K1 * d * std::log(K2 / d) > Delta * (1.0 + 1e-12)) return false;
  }

  BoundParams p;
  p.m = p.n = 100;
  p.a = p.b = 40;
  p.r = 10;
  p.mu = 2.0;
  p.mu1 = 5.0;
  p.sigma0 = 0.8;
  p.sdv = 0.15;
  p.Delta = 0.05;
  BoundParams p2 = p;
  p2.sdv = 0.3;
  const double r_abs =
      generalization_bound(p2, 10000, BoundVariant::absolute_loss) /
      generalization_bound(p, 10000, BoundVariant::absolute_loss);
  if (std::abs(r_abs - 2.0) > 1e-10) return false;
  BoundParams pz = p;
  pz.sdv = 0.0;
  if (generalization_bound(pz, 10000, BoundVariant::absolute_loss) != 0.0) {
    return false;
  }

  const RecoveryThreshold base = exact_recovery_threshold(p);
  BoundParams w = p;
  w.sigma0 = 0.5;
  if (exact_recovery_threshold(w).N_star_explicit <= base.N_star_explicit) {
    return false;
  }
  w = p;
  w.a *= 2;
  w.b *= 2;
  if (exact_recovery_threshold(w).N_star_explicit <= base.N_star_explicit) {
    return false;
  }
  w = p;
  w.mu *= 2;
  if (exact_recovery_threshold(w).N_star_explicit <= base.N_star_explicit) {
    return false;
  }
  w = p;
  w.Delta = 0.005;
  if (exact_recovery_threshold(w).N_star_explicit <= base.N_star_explicit) {
    return false;
  }
  w = p;
  w.r *= 2;
  w.mu1 = 0.0;
  BoundParams base_r = p;
  base_r.mu1 = 0.0;
  if (exact_recovery_threshold(w).N_star_explicit <=
      exact_recovery_threshold(base_r).N_star_explicit) {
    return false;
  }
  return true;
}

// Criterion 8: empirical nuclear-norm error vs the diagnostic bound.
bool criterion8() {
  const int m = 40, n = 40, r = 3, a = 12, b = 12;
  const double sdv = 0.15;
  const std::int64_t N = 6000;
  int hits = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const ProblemInstance inst =
        generate_synthetic(m, n, r, a, b, 40.0, 8000 + t);
    const ObservationSet obs =
        sample_observations(inst, N, NoiseSpec::gaussian(sdv), 8200 + t);
    const double lambda =
        lambda_from_theory(sdv, inst.side.sigma0, a, N, 1.0).mid;
    const Solution sol = solve_lagrangian(inst.side, obs, lambda);
    const DiagnosticsRecord rec =
        check_recovery_diagnostics(sol, inst, obs, lambda, sdv);
    if (rec.total_ok) ++hits;
  }
  std::cerr << "criterion 8: bound satisfied in " << hits << "/" << trials
            << "\n";
  return freq_at_least(hits, trials, 0.95);
}

// Criterion 9: empirical Rademacher vs the worst-case bound, with scaling.
bool criterion9() {
  Rng rng(9001);
  for (int t = 0; t < 50; ++t) {
    const ProblemInstance inst =
        generate_synthetic(12, 12, 2, 4, 4, 10.0, 9100 + t);
    const double Mnorm = 0.5 + 4.0 * rng.uniform();
    const double est =
        empirical_rademacher(inst.side, Mnorm, 150, 40, 9200 + t);
    if (est > rademacher_bound(inst.side, Mnorm, 150)) {
      std::cerr << "criterion 9: bound violated at trial " << t << "\n";
      return false;
    }
  }
  const ProblemInstance inst = generate_synthetic(12, 12, 2, 4, 4, 10.0, 9301);
  const double est_N = empirical_rademacher(inst.side, 3.0, 100, 80, 9400);
  const double est_4N = empirical_rademacher(inst.side, 3.0, 400, 80, 9500);
  const double ratio = est_N / est_4N;
  std::cerr << "criterion 9: N-scaling ratio " << ratio << "\n";
  return ratio >= 1.7 && ratio <= 2.3;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  if (argc > 1) {
    which.push_back(std::atoi(argv[1]));
  } else {
    for (int k = 1; k <= 9; ++k) which.push_back(k);
  }
  bool all_ok = true;
  for (int k : which) {
    bool ok = false;
    switch (k) {
      case 1: ok = criterion1(); break;
      case 2: ok = criterion2(); break;
      case 3: ok = criterion3(); break;
      case 4: ok = criterion4(); break;
      case 5: ok = criterion5(); break;
      case 6: ok = criterion6(); break;
      case 7: ok = criterion7(); break;
      case 8: ok = criterion8(); break;
      case 9: ok = criterion9(); break;
      default:
        std::cerr << "unknown criterion " << k << "\n";
        return 2;
    }
    std::cout << "[criterion " << k << "] " << (ok ? "PASS" : "FAIL")
              << std::endl;
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
