#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "imc/problem.hpp"

namespace imc {

enum class NoiseKind { none, gaussian };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::none;
  double sdv = 0.0;  // subgaussianity parameter nu

  static NoiseSpec none() { return {NoiseKind::none, 0.0}; }
  static NoiseSpec gaussian(double sdv) {
    return {sdv > 0.0 ? NoiseKind::gaussian : NoiseKind::none, sdv};
  }
};

struct Observation {
  int i;
  int j;
  double value;
};

struct EntryAggregate {
  double mean = 0.0;
  int count = 0;
};

/// N samples drawn with replacement from [m] x [n], with per-entry
/// multiplicity counts h_ij and the aggregated (mean, count) view the
/// solvers consume.
struct ObservationSet {
  int m = 0;
  int n = 0;
  std::vector<Observation> samples;
  std::unordered_map<std::int64_t, int> counts;            // key = i*n + j
  std::unordered_map<std::int64_t, EntryAggregate> aggregate;

  std::int64_t key(int i, int j) const {
    return static_cast<std::int64_t>(i) * n + j;
  }
  int count_at(int i, int j) const {
    auto it = counts.find(key(i, j));
    return it == counts.end() ? 0 : it->second;
  }
  std::size_t size() const { return samples.size(); }

  /// Rebuild counts/aggregate from the sample list.
  void rebuild_index();

  /// Observation set over the same grid holding an explicit sample list.
  static ObservationSet from_samples(int m, int n,
                                     std::vector<Observation> samples);
};

/// N i.i.d. uniform draws over the entries of instance.R, each perturbed by
/// independent N(0, sdv^2) noise.  Deterministic for fixed seed.
ObservationSet sample_observations(const ProblemInstance& instance,
                                   std::int64_t N, const NoiseSpec& noise,
                                   std::uint64_t seed);

struct MultiplicityReport {
  int max_count = 0;
  int min_count = 0;
  double tau5_bound = 0.0;        // N/(mn) + (8/3) log(2mn/d5) sqrt(N/(mn))
  double tau5_tilde = 0.0;        // 5 log(2mn/d5), reported when N <= mn
  bool has_tau5_tilde = false;
  bool coverage_ok = false;       // every entry sampled at least once
};

MultiplicityReport multiplicity_stats(const ObservationSet& obs,
                                      double delta5);

}  // namespace imc
