// Optimal-fair benchmark oracle: maximize social welfare or utilization over
// the non-wasteful allocations satisfying SI and EF, via a linear program in
// the dominant shares y:
//
//   maximize  sum_i y_i            (or an auxiliary t <= consumption of every
//                                   resource, for utilization)
//   subject to  y_i >= 1/n                              (SI)
//               y_i >= c_ij * y_j,  c_ij = min_r d_jr/d_ir   (EF, share form)
//               sum_i y_i * d_ir <= 1 for every r        (feasibility)
//
// Restricting to non-wasteful allocations loses nothing for social welfare
// (trimming a wasteful bundle to y_j * d_j preserves u_j and weakly lowers
// every u_i(A_j)); for utilization the same trim only removes surplus that
// no agent consumes. See the README benchmark notes for the full argument.
//
// The solver internals substitute z_i = y_i - 1/n (making every right-hand
// side nonnegative), merge identical demand rows into one variable, and for
// two resources replace the O(n^2) EF pairs by an equivalent sorted chain;
// larger EF systems are built lazily. Every solve is audited against the
// full original constraint set at 1e-9 and falls back to the unreduced rows
// if the audit ever fails.
#pragma once

#include <vector>

#include "fairalloc/core.hpp"
#include "fairalloc/mechanisms.hpp"

namespace fairalloc {

struct DegenerateDenominator : DomainError {
  using DomainError::DomainError;
};

struct OutOfDomain : DomainError {
  using DomainError::DomainError;
};

struct FairPoint {
  double value = 0.0;
  std::vector<double> y;  // optimizing dominant shares, size n
};

struct FairBenchmark {
  double sw_opt = 0.0;
  double util_opt = 0.0;
  std::vector<double> y_sw;
  std::vector<double> y_util;
};

FairPoint max_fair_sw(const Instance& inst);
FairPoint max_fair_util(const Instance& inst);
FairBenchmark fair_benchmark(const Instance& inst);

struct RatioPair {
  double sw_ratio = 0.0;
  double util_ratio = 0.0;
};

// benchmark value / mechanism value, per objective. The mechanism's social
// welfare is the share sum (allocations are non-wasteful).
RatioPair fair_ratio(const MechanismResult& result, const FairBenchmark& bench);

enum class MechanismTag { Drf, F1, F2, F2Star, GeneralizedF1 };

struct TheoreticalBounds {
  double sw_bound = 0.0;
  double util_bound = 0.0;
  bool util_unbounded = false;  // three-or-more-resource families: no finite utilization bound
};

// Closed-form worst-case ratios. Two resources: population ratio alpha in
// (0, 1/2] (beta ignored; n only enters the f2star forms). Three or more:
// alpha, beta in (0, 1), tags Drf and GeneralizedF1 only.
TheoreticalBounds theoretical_ratios(MechanismTag tag, double alpha, double beta, int n, int m);

}  // namespace fairalloc
