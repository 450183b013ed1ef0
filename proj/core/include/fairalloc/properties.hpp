// Property verifiers: share incentive (SI), envy-freeness (EF), Pareto
// optimality (PO, valid for non-wasteful allocations), non-wastefulness, and
// a grid-search strategyproofness probe.
//
// SP is probed, never proven: the probe replaces one agent's report with each
// vector from a finite grid and looks for a true-utility gain. A clean probe
// is evidence, not a certificate — the property quantifies over a continuum.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fairalloc/core.hpp"
#include "fairalloc/mechanisms.hpp"

namespace fairalloc {

struct ShapeMismatch : DomainError {
  using DomainError::DomainError;
};

struct NotNonWasteful : DomainError {
  using DomainError::DomainError;
};

struct SiResult {
  bool pass = true;
  int worst_agent = -1;
  double shortfall = 0.0;  // max(0, 1/n - min utility)
};

struct EnvyPair {
  int envious = -1;
  int envied = -1;
  double magnitude = 0.0;  // u_i(A_j) - u_i(A_i) > 0
};

struct EfResult {
  bool pass = true;
  std::vector<EnvyPair> violations;  // sorted by (envious, envied)
};

struct PoResult {
  bool pass = true;
  double max_column_sum = 0.0;
};

struct NonWastefulResult {
  bool pass = true;
  int worst_agent = -1;
  int worst_resource = -1;
  double worst_deviation = 0.0;  // max |A_ir - y_i d_ir|
};

struct PropertyReport {
  SiResult si;
  EfResult ef;
  PoResult po;
  NonWastefulResult non_wasteful;

  bool all_pass() const { return si.pass && ef.pass && po.pass && non_wasteful.pass; }
};

SiResult check_si(const Allocation& alloc, const Instance& inst);
EfResult check_ef(const Allocation& alloc, const Instance& inst);
// PO for non-wasteful allocations reduces to "some resource is used up".
// Throws NotNonWasteful if the allocation deviates from shares * demands by
// more than eps anywhere.
PoResult check_po(const Allocation& alloc, const Instance& inst);
NonWastefulResult check_nonwasteful(const Allocation& alloc, const Instance& inst);

// All four; po is evaluated from the column sums but only passes when the
// non-wastefulness precondition holds.
PropertyReport check_all(const Allocation& alloc, const Instance& inst);

struct ManipulationFinding {
  int agent = -1;
  DemandVector false_demand;
  double truthful_utility = 0.0;
  double manipulated_utility = 0.0;
  double gain = 0.0;
};

using MechanismFn = std::function<MechanismResult(const Instance&)>;

// Normalized report grid: one coordinate pinned at 1, others on
// {1/k, 2/k, ..., 1}; lexicographically sorted, duplicates removed.
std::vector<DemandVector> sp_grid(int m, int k = 100);

// Run the mechanism with agent's row replaced by every grid vector; return
// the best true-utility gain above the reporting tolerance (1e-6), or
// nothing. Ties prefer the lexicographically smallest false report.
std::optional<ManipulationFinding> sp_probe(const MechanismFn& mechanism, const Instance& inst,
                                            int agent, const std::vector<DemandVector>& grid,
                                            double gain_tol = 1e-6);

}  // namespace fairalloc
