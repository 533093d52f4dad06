#pragma once

#include "imc/problem.hpp"
#include "imc/rng.hpp"

namespace imc::test {

inline Matrix random_matrix(int rows, int cols, Rng& rng) {
  Matrix M(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) M(i, j) = rng.gaussian();
  return M;
}

/// Binomial 3-sigma slack on a frequency test: observing `hits` successes in
/// `trials` is consistent with success probability >= p_floor.
inline bool freq_at_least(int hits, int trials, double p_floor) {
  const double sd = std::sqrt(p_floor * (1.0 - p_floor) *
                              static_cast<double>(trials));
  return hits >= p_floor * trials - 3.0 * sd;
}

/// Frequency of bad events consistent with probability <= p_cap.
inline bool freq_at_most(int hits, int trials, double p_cap) {
  const double sd =
      std::sqrt(p_cap * (1.0 - p_cap) * static_cast<double>(trials));
  return hits <= p_cap * trials + 3.0 * sd;
}

}  // namespace imc::test
