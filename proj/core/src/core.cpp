#include "fairalloc/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace fairalloc {

namespace {

double g_eps = -1.0;  // sentinel: not yet initialized

double read_eps_from_env() {
  if (const char* raw = std::getenv("ALLOC_EPS")) {
    char* end = nullptr;
    double v = std::strtod(raw, &end);
    if (end != raw && std::isfinite(v) && v > 0.0) return v;
  }
  return 1e-9;
}

}  // namespace

double eps() {
  if (g_eps < 0.0) g_eps = read_eps_from_env();
  return g_eps;
}

void set_eps(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw InputError("eps must be positive and finite");
  g_eps = value;
}

Instance normalize(const std::vector<std::vector<double>>& raw) {
  if (raw.empty()) throw EmptyInstance("instance has no agents");
  const std::size_t m = raw[0].size();
  if (m < 2) throw EmptyInstance("instance needs at least two resources");
  Instance inst;
  inst.demands.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& row = raw[i];
    if (row.size() != m)
      throw InputError("ragged demand matrix: row " + std::to_string(i) + " has " +
                       std::to_string(row.size()) + " entries, expected " + std::to_string(m));
    double mx = 0.0;
    for (double v : row) {
      if (!std::isfinite(v) || v <= 0.0)
        throw NonPositiveDemand("demand entries must be positive and finite (row " +
                                std::to_string(i) + ")");
      mx = std::max(mx, v);
    }
    DemandVector d(m);
    for (std::size_t r = 0; r < m; ++r) d[r] = row[r] / mx;
    // Pin the dominant entry to exactly 1.0; division can leave it one ulp off.
    for (std::size_t r = 0; r < m; ++r)
      if (row[r] == mx) d[r] = 1.0;
    inst.demands.push_back(std::move(d));
  }
  return inst;
}

double utility(const std::vector<double>& bundle, const DemandVector& demand) {
  if (bundle.size() != demand.size()) throw DomainError("bundle/demand arity mismatch");
  double u = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < demand.size(); ++r) {
    if (!(demand[r] > 0.0)) throw DomainError("demand entries must be positive");
    u = std::min(u, bundle[r] / demand[r]);
  }
  return u;
}

GroupPartition partition(const Instance& inst) {
  const int n = inst.n();
  const int m = inst.m();
  if (n == 0 || m < 2) throw DomainError("partition needs a normalized instance");
  GroupPartition part;
  part.groups.assign(m, {});
  for (int i = 0; i < n; ++i) {
    const auto& d = inst.demands[i];
    int dom = 0;
    for (int r = 1; r < m; ++r)
      if (d[r] > d[dom]) dom = r;  // strict: ties stay with the smaller index
    part.groups[dom].push_back(i);
  }
  const double n1 = static_cast<double>(part.groups[0].size());
  if (m == 2) {
    const double n2 = static_cast<double>(part.groups[1].size());
    part.alpha = std::min(n1, n2) / n;
  } else {
    part.alpha = 1.0 - n1 / n;
    const int outside = n - static_cast<int>(n1);
    if (outside > 0) {
      double sum = 0.0;
      for (int r = 1; r < m; ++r)
        for (int i : part.groups[r]) sum += inst.demands[i][0];
      part.beta = sum / (n * part.alpha);
      part.beta_defined = true;
    }
  }
  return part;
}

double social_welfare(const Allocation& alloc, const Instance& inst) {
  if (alloc.n() != inst.n()) throw DomainError("allocation/instance agent count mismatch");
  double sw = 0.0;
  for (int i = 0; i < inst.n(); ++i) sw += utility(alloc.rows[i], inst.demands[i]);
  return sw;
}

std::vector<double> column_sums(const Allocation& alloc) {
  std::vector<double> sums(alloc.m(), 0.0);
  for (const auto& row : alloc.rows)
    for (std::size_t r = 0; r < row.size(); ++r) sums[r] += row[r];
  return sums;
}

double utilization(const Allocation& alloc) {
  const auto sums = column_sums(alloc);
  if (sums.empty()) return 0.0;
  return *std::min_element(sums.begin(), sums.end());
}

Allocation allocation_from_shares(const std::vector<double>& shares, const Instance& inst) {
  if (static_cast<int>(shares.size()) != inst.n())
    throw DomainError("share vector size does not match agent count");
  Allocation alloc;
  alloc.shares = shares;
  alloc.rows.reserve(inst.n());
  for (int i = 0; i < inst.n(); ++i) {
    std::vector<double> row(inst.m());
    for (int r = 0; r < inst.m(); ++r) row[r] = shares[i] * inst.demands[i][r];
    alloc.rows.push_back(std::move(row));
  }
  return alloc;
}

}  // namespace fairalloc
