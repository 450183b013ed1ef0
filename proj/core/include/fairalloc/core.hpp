// Core domain types for multi-resource allocation under Leontief demands:
// normalized demand matrices, share-parameterized allocations, dominant-resource
// group partitions, and the two efficiency metrics (social welfare, utilization).
//
// Conventions used throughout the library:
//  * every resource has capacity 1; demands are fractions of capacity;
//  * demand rows are normalized so the largest entry is exactly 1 (the
//    agent's dominant resource);
//  * an allocation is "non-wasteful" when each bundle is an exact scalar
//    multiple of the agent's demand row; the scalar is the agent's dominant
//    share y_i, which equals its Leontief utility.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fairalloc {

// ---------------------------------------------------------------------------
// Errors. Two families, matching the CLI exit-code contract:
//   InputError  -> exit 2 (unreadable/ill-formed input, bad generator params)
//   DomainError -> exit 3 (operation applied outside its domain, e.g. a
//                  two-resource mechanism on m != 2)
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InputError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

// Raised by normalize() for a matrix with any entry <= 0 (or non-finite).
struct NonPositiveDemand : InputError {
  using InputError::InputError;
};

// Raised by normalize() for a matrix with no rows or fewer than two columns.
struct EmptyInstance : InputError {
  using InputError::InputError;
};

// ---------------------------------------------------------------------------
// Tolerance plumbing. The global comparison tolerance defaults to 1e-9 and can
// be overridden through the ALLOC_EPS environment variable (read once, at
// first use) or programmatically via set_eps (tests only).
// ---------------------------------------------------------------------------

double eps();
void set_eps(double value);

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

// One agent's normalized demand vector: m entries in (0,1], max entry == 1.
using DemandVector = std::vector<double>;

struct Instance {
  std::vector<DemandVector> demands;  // n rows, m columns, normalized

  int n() const { return static_cast<int>(demands.size()); }
  int m() const { return demands.empty() ? 0 : static_cast<int>(demands[0].size()); }
};

// Share-parameterized allocation. `rows` is the full n x m fraction matrix;
// `shares` is the per-agent dominant share y (equal to the agent's utility for
// non-wasteful allocations).
struct Allocation {
  std::vector<double> shares;            // y, size n
  std::vector<std::vector<double>> rows; // A, n x m

  int n() const { return static_cast<int>(rows.size()); }
  int m() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
};

// Dominant-resource partition. groups[r] lists the agents whose dominant
// resource is r (ties broken toward the smallest resource index, so a (1,1)
// row lands in the resource-1 group).
//
// alpha: for m == 2, the minor-population ratio |smaller group| / n.
//        For m >= 3, the fraction of agents outside the special group
//        (resource 1): 1 - |G1|/n.
// beta:  m >= 3 only; average resource-1 demand of agents outside G1.
//        Undefined (beta_defined == false) when alpha == 0.
struct GroupPartition {
  std::vector<std::vector<int>> groups;  // size m
  double alpha = 0.0;
  double beta = 0.0;
  bool beta_defined = false;

  const std::vector<int>& group(int r) const { return groups.at(r); }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Divide every row of a positive matrix by its maximum entry. The maximum
// entry of each output row is exactly 1.0. Throws InputError on non-positive
// entries, an empty matrix, fewer than two columns, or ragged rows.
Instance normalize(const std::vector<std::vector<double>>& raw);

// Leontief utility of a bundle under a demand vector: min_r bundle[r] / d[r].
double utility(const std::vector<double>& bundle, const DemandVector& demand);

// Partition agents by dominant resource and derive alpha (and beta for m >= 3).
GroupPartition partition(const Instance& inst);

// Sum of agent utilities under their own demand vectors.
double social_welfare(const Allocation& alloc, const Instance& inst);

// Minimum consumed fraction over resources: min_r sum_i A_{ir}.
double utilization(const Allocation& alloc);

// Column sums of the allocation matrix (consumed fraction per resource).
std::vector<double> column_sums(const Allocation& alloc);

// Build the non-wasteful allocation with the given dominant shares:
// A_i = y_i * d_i. Sizes must match.
Allocation allocation_from_shares(const std::vector<double>& shares, const Instance& inst);

}  // namespace fairalloc
