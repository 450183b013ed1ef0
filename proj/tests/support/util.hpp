// Shared test fixtures: seeded random instances and small numeric helpers.
#pragma once

#include <cmath>
#include <vector>

#include "fairalloc/core.hpp"
#include "fairalloc/rng.hpp"

namespace testutil {

// Random normalized instance with demands on the centesimal grid. Guarantees
// at least two distinct dominant resources when n >= m is feasible is NOT
// promised; callers that need a particular group structure should build it.
inline fairalloc::Instance random_instance(fairalloc::SplitMix64& rng, int n, int m) {
  std::vector<std::vector<double>> raw(n, std::vector<double>(m));
  for (int i = 0; i < n; ++i) {
    const int dom = static_cast<int>(rng.next_in(0, m - 1));
    for (int r = 0; r < m; ++r)
      raw[i][r] = r == dom ? 1.0 : static_cast<double>(rng.next_in(1, 100)) / 100.0;
  }
  return fairalloc::normalize(raw);
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline bool rows_close(const std::vector<std::vector<double>>& a,
                       const std::vector<std::vector<double>>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!close(a[i][j], b[i][j], tol)) return false;
  }
  return true;
}

inline double max_share_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

}  // namespace testutil
