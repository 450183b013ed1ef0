#include "fairalloc/fairopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "fairalloc/simplex.hpp"

namespace fairalloc {

namespace {

constexpr double kAudit = 1e-9;

// Identical demand rows are forced to the same share by EF (c_ij = 1 both
// ways), so they can share one LP variable with a multiplicity weight.
struct Classes {
  std::vector<DemandVector> rep;
  std::vector<double> weight;
  std::vector<int> of_agent;
};

Classes collapse(const Instance& inst) {
  Classes cls;
  std::map<DemandVector, int> seen;
  cls.of_agent.reserve(inst.n());
  for (const auto& d : inst.demands) {
    auto [it, fresh] = seen.try_emplace(d, static_cast<int>(cls.rep.size()));
    if (fresh) {
      cls.rep.push_back(d);
      cls.weight.push_back(0.0);
    }
    cls.of_agent.push_back(it->second);
    cls.weight[it->second] += 1.0;
  }
  return cls;
}

double envy_coeff(const DemandVector& di, const DemandVector& dj) {
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < di.size(); ++r) c = std::min(c, dj[r] / di[r]);
  return c;
}

// Exact O(C) replacement for the O(C^2) EF pairs when m = 2: within each
// dominant group, sorting by the non-dominant demand makes every pairwise
// constraint a consequence of the consecutive ones (y non-increasing and
// a*y non-decreasing along the sort); across groups only the two constraints
// between the max-non-dominant representatives are binding.
std::vector<std::pair<int, int>> chain_pairs_m2(const Classes& cls) {
  std::vector<int> g1, g2;
  for (int c = 0; c < static_cast<int>(cls.rep.size()); ++c)
    (cls.rep[c][0] == 1.0 ? g1 : g2).push_back(c);
  const auto by_offdom = [&](int r) {
    return [&, r](int a, int b) { return cls.rep[a][r] < cls.rep[b][r]; };
  };
  std::sort(g1.begin(), g1.end(), by_offdom(1));
  std::sort(g2.begin(), g2.end(), by_offdom(0));

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t p = 0; p + 1 < g1.size(); ++p) {
    pairs.emplace_back(g1[p], g1[p + 1]);
    pairs.emplace_back(g1[p + 1], g1[p]);
  }
  for (std::size_t p = 0; p + 1 < g2.size(); ++p) {
    pairs.emplace_back(g2[p], g2[p + 1]);
    pairs.emplace_back(g2[p + 1], g2[p]);
  }
  if (!g1.empty() && !g2.empty()) {
    pairs.emplace_back(g1.back(), g2.back());
    pairs.emplace_back(g2.back(), g1.back());
  }
  return pairs;
}

std::vector<std::pair<int, int>> all_pairs(int c_count) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(c_count) * (c_count - 1));
  for (int i = 0; i < c_count; ++i)
    for (int j = 0; j < c_count; ++j)
      if (i != j) pairs.emplace_back(i, j);
  return pairs;
}

struct ClassSolution {
  double value = 0.0;
  std::vector<double> y;  // per class
};

// Solve one fair LP over class shares with the given EF pair list, in the
// shifted variables z = y - 1/n (all right-hand sides nonnegative, so the
// all-slack basis is immediately feasible).
ClassSolution solve_rows(const Classes& cls, const std::vector<std::vector<double>>& coeff,
                         const std::vector<std::pair<int, int>>& pairs, bool util_objective,
                         int n) {
  const int c_count = static_cast<int>(cls.rep.size());
  const int m = static_cast<int>(cls.rep[0].size());
  const int nv = c_count + (util_objective ? 1 : 0);

  LinearProgram lp;
  lp.objective.assign(nv, 0.0);
  if (util_objective)
    lp.objective[c_count] = 1.0;
  else
    for (int c = 0; c < c_count; ++c) lp.objective[c] = cls.weight[c];

  for (int r = 0; r < m; ++r) {
    std::vector<double> row(nv, 0.0);
    double used_at_equal_split = 0.0;
    for (int c = 0; c < c_count; ++c) {
      row[c] = cls.weight[c] * cls.rep[c][r];
      used_at_equal_split += row[c] / n;
    }
    lp.rows.push_back(row);
    lp.rhs.push_back(1.0 - used_at_equal_split);
    if (util_objective) {
      std::vector<double> trow(nv, 0.0);
      trow[c_count] = 1.0;
      for (int c = 0; c < c_count; ++c) trow[c] = -cls.weight[c] * cls.rep[c][r];
      lp.rows.push_back(trow);
      lp.rhs.push_back(used_at_equal_split);
    }
  }
  for (const auto& [i, j] : pairs) {
    std::vector<double> row(nv, 0.0);
    row[i] = -1.0;
    row[j] = coeff[i][j];
    lp.rows.push_back(row);
    lp.rhs.push_back((1.0 - coeff[i][j]) / n);
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status == LpStatus::Infeasible)
    throw Infeasible("fair benchmark LP reported infeasible; the equal split is always feasible");
  if (sol.status == LpStatus::Unbounded)
    throw Unbounded("fair benchmark LP reported unbounded; shares are capped by capacity");

  ClassSolution out;
  out.y.resize(c_count);
  for (int c = 0; c < c_count; ++c) out.y[c] = sol.x[c] + 1.0 / n;
  out.value = util_objective ? sol.value : 0.0;
  return out;
}

FairPoint solve_fair(const Instance& inst, bool util_objective) {
  const int n = inst.n();
  const int m = inst.m();
  if (n == 0 || m < 2) throw DomainError("fair benchmark needs a normalized instance");
  const Classes cls = collapse(inst);
  const int c_count = static_cast<int>(cls.rep.size());

  std::vector<std::vector<double>> coeff(c_count, std::vector<double>(c_count, 1.0));
  for (int i = 0; i < c_count; ++i)
    for (int j = 0; j < c_count; ++j)
      if (i != j) coeff[i][j] = envy_coeff(cls.rep[i], cls.rep[j]);

  // Row strategy: exact chain for m = 2; everything for small systems;
  // otherwise cutting-plane style — seed each class's tightest envy partner,
  // add the audit's worst missing row per class each round, and retire rows
  // that have stayed slack (only at most c_count EF rows can bind at a vertex,
  // so carrying the full quadratic set around is pure ballast).
  const bool lazy = (m != 2 && c_count > 40);
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> born;  // lazy only: round each row was added
  if (m == 2) {
    pairs = chain_pairs_m2(cls);
  } else if (!lazy) {
    pairs = all_pairs(c_count);
  } else {
    for (int i = 0; i < c_count; ++i) {
      int jstar = -1;
      double cmax = -1.0;
      for (int j = 0; j < c_count; ++j)
        if (j != i && coeff[i][j] > cmax) {
          cmax = coeff[i][j];
          jstar = j;
        }
      if (jstar >= 0) pairs.emplace_back(i, jstar);
    }
    born.assign(pairs.size(), 0);
  }

  std::vector<std::vector<char>> have(c_count, std::vector<char>(c_count, 0));
  for (const auto& [i, j] : pairs) have[i][j] = 1;

  ClassSolution best;
  bool fell_back = false;
  for (int round = 0;; ++round) {
    if (round > 2 * c_count + 16) {
      if (fell_back) throw Error("fair benchmark row generation failed to settle");
      fell_back = true;
      pairs = all_pairs(c_count);
      born.clear();
      for (auto& row : have) std::fill(row.begin(), row.end(), 1);
    }
    best = solve_rows(cls, coeff, pairs, util_objective, n);

    // Full-system audit: every EF pair, capacity, SI.
    double worst = 0.0;
    // Per class, the most violated pair not yet in the LP.
    std::vector<int> add_j(c_count, -1);
    std::vector<double> add_v(c_count, kAudit);
    bool any_missing = false;
    for (int i = 0; i < c_count; ++i)
      for (int j = 0; j < c_count; ++j) {
        if (i == j) continue;
        const double viol = coeff[i][j] * best.y[j] - best.y[i];
        if (viol > kAudit) {
          worst = std::max(worst, viol);
          if (!have[i][j] && viol > add_v[i]) {
            add_v[i] = viol;
            add_j[i] = j;
            any_missing = true;
          }
        }
      }
    for (int c = 0; c < c_count; ++c)
      if (best.y[c] < 1.0 / n - kAudit)
        throw Error("fair benchmark audit: SI violated by the solver");
    for (int r = 0; r < m; ++r) {
      double used = 0.0;
      for (int c = 0; c < c_count; ++c) used += cls.weight[c] * best.y[c] * cls.rep[c][r];
      if (used > 1.0 + kAudit) throw Error("fair benchmark audit: capacity violated by the solver");
    }

    if (worst <= kAudit) break;
    if (any_missing) {
      if (lazy && !fell_back) {
        // Retire rows that are comfortably slack and at least two rounds old;
        // if they matter again the audit will bring them back.
        std::size_t w = 0;
        for (std::size_t p = 0; p < pairs.size(); ++p) {
          const auto [i, j] = pairs[p];
          const double slack = best.y[i] - coeff[i][j] * best.y[j];
          if (slack > 1e-6 && born[p] <= round - 2) {
            have[i][j] = 0;
            continue;
          }
          pairs[w] = pairs[p];
          born[w] = born[p];
          ++w;
        }
        pairs.resize(w);
        born.resize(w);
      }
      for (int i = 0; i < c_count; ++i)
        if (add_j[i] >= 0) {
          pairs.emplace_back(i, add_j[i]);
          if (lazy && !fell_back) born.push_back(round + 1);
          have[i][add_j[i]] = 1;
        }
      continue;
    }
    // All violated pairs are already in the LP: the reduction itself must be
    // at fault. Fall back to the unreduced row set once.
    if (fell_back) throw Error("fair benchmark audit failed on the full row set");
    fell_back = true;
    pairs = all_pairs(c_count);
    born.clear();
    for (auto& row : have) std::fill(row.begin(), row.end(), 1);
  }

  FairPoint out;
  out.y.resize(n);
  for (int i = 0; i < n; ++i) out.y[i] = best.y[cls.of_agent[i]];
  if (util_objective) {
    double util = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      double used = 0.0;
      for (int i = 0; i < n; ++i) used += out.y[i] * inst.demands[i][r];
      util = std::min(util, used);
    }
    out.value = util;
  } else {
    out.value = 0.0;
    for (double y : out.y) out.value += y;
  }
  return out;
}

}  // namespace

FairPoint max_fair_sw(const Instance& inst) { return solve_fair(inst, false); }
FairPoint max_fair_util(const Instance& inst) { return solve_fair(inst, true); }

FairBenchmark fair_benchmark(const Instance& inst) {
  FairBenchmark bench;
  FairPoint sw = max_fair_sw(inst);
  FairPoint util = max_fair_util(inst);
  bench.sw_opt = sw.value;
  bench.util_opt = util.value;
  bench.y_sw = std::move(sw.y);
  bench.y_util = std::move(util.y);
  return bench;
}

RatioPair fair_ratio(const MechanismResult& result, const FairBenchmark& bench) {
  double sw = 0.0;
  for (double y : result.allocation.shares) sw += y;
  const double util = utilization(result.allocation);
  if (sw <= eps() || util <= eps())
    throw DegenerateDenominator("mechanism social welfare or utilization is (near) zero");
  return {bench.sw_opt / sw, bench.util_opt / util};
}

TheoreticalBounds theoretical_ratios(MechanismTag tag, double alpha, double beta, int n, int m) {
  TheoreticalBounds out;
  if (m == 2) {
    if (!(alpha > 0.0 && alpha <= 0.5))
      throw OutOfDomain("two-resource bounds need alpha in (0, 1/2]");
    switch (tag) {
      case MechanismTag::Drf:
        out.sw_bound = 2.0 - alpha;
        out.util_bound = 1.0 / alpha;
        return out;
      case MechanismTag::F1:
      case MechanismTag::GeneralizedF1:  // two-resource reduction is f1
        out.sw_bound = 1.0 + alpha;
        out.util_bound = 1.0 / (1.0 - alpha);
        return out;
      case MechanismTag::F2:
        out.sw_bound = (4.0 - 2.0 * alpha) / (3.0 - alpha);
        out.util_bound = 2.0 / (1.0 + alpha);
        return out;
      case MechanismTag::F2Star:
        if (n < 1) throw OutOfDomain("f2star bounds need n >= 1");
        out.sw_bound = (4.0 - 2.0 * alpha) / (3.0 - alpha - 1.0 / n);
        out.util_bound = 2.0 / (1.0 + alpha - 1.0 / n);
        return out;
    }
    throw OutOfDomain("unknown mechanism tag");
  }
  if (m >= 3) {
    if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
      throw OutOfDomain("three-or-more-resource bounds need alpha, beta in (0, 1)");
    const double shared = m - alpha * beta - (1.0 - alpha);
    out.util_bound = std::numeric_limits<double>::infinity();
    out.util_unbounded = true;
    switch (tag) {
      case MechanismTag::GeneralizedF1:
        out.sw_bound =
            std::max(shared, (m - alpha * beta) / (1.0 + (1.0 - beta) / beta * alpha));
        return out;
      case MechanismTag::Drf:
        out.sw_bound = std::max(shared, (m - alpha * beta) * (1.0 - alpha * (1.0 - beta)));
        return out;
      default:
        throw OutOfDomain("no closed form for this mechanism with three or more resources");
    }
  }
  throw OutOfDomain("bounds need m >= 2");
}

}  // namespace fairalloc
