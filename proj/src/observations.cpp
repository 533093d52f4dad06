#include "imc/observations.hpp"

#include <cmath>
#include <stdexcept>

#include "imc/rng.hpp"

namespace imc {

void ObservationSet::rebuild_index() {
  counts.clear();
  aggregate.clear();
  for (const auto& s : samples) {
    const std::int64_t k = key(s.i, s.j);
    counts[k] += 1;
    auto& agg = aggregate[k];
    agg.count += 1;
    agg.mean += (s.value - agg.mean) / agg.count;  // running mean
  }
}

ObservationSet ObservationSet::from_samples(int m, int n,
                                            std::vector<Observation> samples) {
  ObservationSet obs;
  obs.m = m;
  obs.n = n;
  obs.samples = std::move(samples);
  obs.rebuild_index();
  return obs;
}

ObservationSet sample_observations(const ProblemInstance& instance,
                                   std::int64_t N, const NoiseSpec& noise,
                                   std::uint64_t seed) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  const int m = instance.m(), n = instance.n();
  Rng rng(seed);
  ObservationSet obs;
  obs.m = m;
  obs.n = n;
  obs.samples.reserve(static_cast<std::size_t>(N));
  const bool noisy = noise.kind == NoiseKind::gaussian && noise.sdv > 0.0;
  for (std::int64_t k = 0; k < N; ++k) {
    const int i = static_cast<int>(rng.uniform_index(m));
    const int j = static_cast<int>(rng.uniform_index(n));
    double v = instance.R(i, j);
    if (noisy) v += noise.sdv * rng.gaussian();
    obs.samples.push_back({i, j, v});
  }
  obs.rebuild_index();
  return obs;
}

MultiplicityReport multiplicity_stats(const ObservationSet& obs,
                                      double delta5) {
  if (!(delta5 > 0.0 && delta5 < 1.0)) {
    throw std::invalid_argument("delta5 must be in (0,1)");
  }
  MultiplicityReport rep;
  const double mn = static_cast<double>(obs.m) * obs.n;
  const double N = static_cast<double>(obs.samples.size());
  int maxc = 0;
  for (const auto& [k, c] : obs.counts) maxc = std::max(maxc, c);
  rep.max_count = maxc;
  if (obs.counts.size() == static_cast<std::size_t>(obs.m) *
                               static_cast<std::size_t>(obs.n)) {
    int minc = maxc;
    for (const auto& [k, c] : obs.counts) minc = std::min(minc, c);
    rep.min_count = minc;
    rep.coverage_ok = true;
  } else {
    rep.min_count = 0;
    rep.coverage_ok = false;
  }
  const double logterm = std::log(2.0 * mn / delta5);
  rep.tau5_bound = N / mn + (8.0 / 3.0) * logterm * std::sqrt(N / mn);
  if (N <= mn) {
    rep.tau5_tilde = 5.0 * logterm;
    rep.has_tau5_tilde = true;
  }
  return rep;
}

}  // namespace imc
