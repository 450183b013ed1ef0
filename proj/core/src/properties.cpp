#include "fairalloc/properties.hpp"

#include <algorithm>
#include <cmath>

namespace fairalloc {

namespace {

void require_shapes(const Allocation& alloc, const Instance& inst) {
  if (alloc.n() != inst.n() || alloc.m() != inst.m() ||
      static_cast<int>(alloc.shares.size()) != inst.n())
    throw ShapeMismatch("allocation and instance shapes do not match");
}

}  // namespace

SiResult check_si(const Allocation& alloc, const Instance& inst) {
  require_shapes(alloc, inst);
  const int n = inst.n();
  SiResult res;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = utility(alloc.rows[i], inst.demands[i]);
    const double short_i = 1.0 / n - u;
    if (short_i > worst) {
      worst = short_i;
      res.worst_agent = i;
    }
  }
  res.shortfall = std::max(0.0, worst);
  res.pass = worst <= eps();
  return res;
}

EfResult check_ef(const Allocation& alloc, const Instance& inst) {
  require_shapes(alloc, inst);
  const int n = inst.n();
  EfResult res;
  for (int i = 0; i < n; ++i) {
    const double own = utility(alloc.rows[i], inst.demands[i]);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double other = utility(alloc.rows[j], inst.demands[i]);
      if (other - own > eps()) res.violations.push_back({i, j, other - own});
    }
  }
  res.pass = res.violations.empty();
  return res;
}

NonWastefulResult check_nonwasteful(const Allocation& alloc, const Instance& inst) {
  require_shapes(alloc, inst);
  NonWastefulResult res;
  for (int i = 0; i < inst.n(); ++i)
    for (int r = 0; r < inst.m(); ++r) {
      const double dev = std::abs(alloc.rows[i][r] - alloc.shares[i] * inst.demands[i][r]);
      if (dev > res.worst_deviation) {
        res.worst_deviation = dev;
        res.worst_agent = i;
        res.worst_resource = r;
      }
    }
  res.pass = res.worst_deviation <= eps();
  return res;
}

PoResult check_po(const Allocation& alloc, const Instance& inst) {
  require_shapes(alloc, inst);
  const auto nw = check_nonwasteful(alloc, inst);
  if (!nw.pass)
    throw NotNonWasteful("check_po requires a non-wasteful allocation (worst deviation " +
                         std::to_string(nw.worst_deviation) + ")");
  PoResult res;
  const auto sums = column_sums(alloc);
  res.max_column_sum = *std::max_element(sums.begin(), sums.end());
  res.pass = res.max_column_sum >= 1.0 - eps();
  return res;
}

PropertyReport check_all(const Allocation& alloc, const Instance& inst) {
  PropertyReport rep;
  rep.si = check_si(alloc, inst);
  rep.ef = check_ef(alloc, inst);
  rep.non_wasteful = check_nonwasteful(alloc, inst);
  const auto sums = column_sums(alloc);
  rep.po.max_column_sum = sums.empty() ? 0.0 : *std::max_element(sums.begin(), sums.end());
  rep.po.pass = rep.non_wasteful.pass && rep.po.max_column_sum >= 1.0 - eps();
  return rep;
}

std::vector<DemandVector> sp_grid(int m, int k) {
  if (m < 2 || k < 1) throw DomainError("sp_grid needs m >= 2, k >= 1");
  std::vector<DemandVector> grid;
  // One coordinate pinned at 1, the rest sweep the k-point ladder. Built
  // recursively; duplicates (vectors with several 1 entries) removed after
  // sorting.
  std::vector<double> ladder(k);
  for (int v = 1; v <= k; ++v) ladder[v - 1] = static_cast<double>(v) / k;
  std::vector<double> cur(m, 1.0);
  std::function<void(int, int)> build = [&](int pos, int pinned) {
    if (pos == m) {
      grid.push_back(cur);
      return;
    }
    if (pos == pinned) {
      cur[pos] = 1.0;
      build(pos + 1, pinned);
      return;
    }
    for (double v : ladder) {
      cur[pos] = v;
      build(pos + 1, pinned);
    }
  };
  for (int pinned = 0; pinned < m; ++pinned) build(0, pinned);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::optional<ManipulationFinding> sp_probe(const MechanismFn& mechanism, const Instance& inst,
                                            int agent, const std::vector<DemandVector>& grid,
                                            double gain_tol) {
  if (agent < 0 || agent >= inst.n()) throw ShapeMismatch("sp_probe: agent index out of range");
  if (grid.empty()) throw DomainError("sp_probe: empty grid");

  const DemandVector truth = inst.demands[agent];
  const MechanismResult honest = mechanism(inst);
  const double truthful = utility(honest.allocation.rows[agent], truth);

  std::optional<ManipulationFinding> best;
  Instance probe = inst;
  for (const auto& report : grid) {
    if (static_cast<int>(report.size()) != inst.m())
      throw ShapeMismatch("sp_probe: grid vector arity mismatch");
    probe.demands[agent] = report;
    MechanismResult lied;
    try {
      lied = mechanism(probe);
    } catch (const Error& e) {
      std::string coords;
      for (double v : report) coords += (coords.empty() ? "" : ",") + std::to_string(v);
      throw DomainError(std::string("sp_probe: mechanism failed on grid vector (") + coords +
                        "): " + e.what());
    }
    const double lied_utility = utility(lied.allocation.rows[agent], truth);
    const double gain = lied_utility - truthful;
    // Strict improvement keeps the lexicographically smallest report on ties
    // (the grid is sorted).
    if (gain > gain_tol && (!best || gain > best->gain)) {
      best = ManipulationFinding{agent, report, truthful, lied_utility, gain};
    }
  }
  return best;
}

}  // namespace fairalloc
