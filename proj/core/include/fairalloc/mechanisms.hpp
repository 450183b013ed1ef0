// Allocation mechanisms.
//
// All mechanisms start from the equal split (every agent gets dominant share
// 1/n) and then water-fill some frontier until a resource is exhausted:
//
//   drf            equalize dominant shares across all agents (any m)
//   f1             raise the resource-1 fractions of the resource-2 group (m = 2)
//   f2             raise both groups' opposite-resource fractions with the
//                  step sizes coupled so the groups' total dominant-share
//                  gains stay proportional to the post-equal-split remainders
//                  R1 : R2 (m = 2)
//   f2star         f2 with the coupling ratio R1* : R2*, where each remainder
//                  is padded by the smallest opposite-resource demand in the
//                  other group divided by n (m = 2)
//   f_g            generic water-filling on a strictly monotone score g of
//                  the bundle (any m); drf and f1 are the special cases
//                  g = dominant share and g = resource-1 fraction
//   generalized_f1 f_g with g = fraction of a designated "special" resource
//   hybrid_sw      dispatch f1 / f2star on a social-welfare threshold of alpha
//   hybrid_util    dispatch f1 / f2star on a utilization threshold of alpha
//
// The two-resource mechanisms follow the convention that resource 1 is the
// majority group's dominant resource; callers that cannot guarantee this
// should relabel columns first (see relabel_major_first).
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fairalloc/core.hpp"

namespace fairalloc {

struct WrongArity : DomainError {
  using DomainError::DomainError;
};

struct NonMonotoneScore : DomainError {
  using DomainError::DomainError;
};

// One step-2 round, for debugging and for the round-count/coupling tests.
// Field use by mechanism:
//   f1:          p2 = frontier within G2, delta2 = per-agent resource-1 increment
//   f2, f2star:  p1/p2 = frontiers within G1/G2, delta1/delta2 = per-agent
//                increments of the opposite resource (resource 2 for p1
//                members, resource 1 for p2 members)
//   f_g:         p2 = global frontier P, delta2 = g-level reached
struct Round {
  std::vector<int> p1;
  std::vector<int> p2;
  double delta1 = 0.0;
  double delta2 = 0.0;
};

// Internal quantities of the two-group mechanisms, exposed for audit: the
// remainders R1/R2 are fixed right after step 1; ds1/ds2 accumulate the
// step-2 dominant-share gains per group; c1/c2 are the live capacities at
// termination; p1/p2 and d1/d2 describe the final frontiers.
struct StepQuantities {
  double r1 = 0.0, r2 = 0.0;
  double r1s = 0.0, r2s = 0.0;  // starred remainders (f2star's coupling ratio)
  double ds1 = 0.0, ds2 = 0.0;
  double c1 = 0.0, c2 = 0.0;
  std::vector<int> p1, p2;
  double d1 = 0.0, d2 = 0.0;  // sum of 1/d_{i,opposite} over the final frontiers
};

struct MechanismResult {
  Allocation allocation;
  std::vector<int> exhausted;  // resources with column sum >= 1 - eps
  std::vector<Round> trace;    // step-2 rounds
  std::string dispatched;      // hybrids: "f1" or "f2star"; empty otherwise
  bool has_step2 = false;      // true when the f2/f2star step-2 path ran
  StepQuantities step2;
};

// Strictly monotone bundle score driving f_g. When homogeneous is set
// (g(t*v) = t*g(v)), level targets are solved in closed form; otherwise by
// bisection.
struct ScoreFunction {
  std::function<double(const std::vector<double>&)> eval;
  bool homogeneous = false;
  std::string name;
};

MechanismResult drf(const Instance& inst);
MechanismResult f1(const Instance& inst);
MechanismResult f2(const Instance& inst);
MechanismResult f2star(const Instance& inst);
MechanismResult f_g(const Instance& inst, const ScoreFunction& g);

// f_g with the coordinate score of `special` (0-based resource). special = -1
// picks the resource whose dominant group is largest (ties toward index 0).
MechanismResult generalized_f1(const Instance& inst, int special = -1);

MechanismResult hybrid_sw(const Instance& inst);
MechanismResult hybrid_util(const Instance& inst);

// Ready-made scores for f_g.
ScoreFunction score_coordinate(int r);  // g(v) = v_r (homogeneous)
ScoreFunction score_dominant();         // g(v) = max_r v_r: the dominant share of a
                                        // non-wasteful bundle (homogeneous)
ScoreFunction score_sum();              // g(v) = sum_r v_r (homogeneous)
ScoreFunction score_sum_product();      // g(v) = sum_r v_r + prod_r v_r (not homogeneous)

// Two-resource column convention helper: if resource 2's dominant group is
// strictly larger than resource 1's, return the column-swapped instance and
// true; otherwise a copy and false. Swap allocation columns back with
// swap_allocation_columns when it returns true.
std::pair<Instance, bool> relabel_major_first(const Instance& inst);
Allocation swap_allocation_columns(const Allocation& alloc, int ra, int rb);

}  // namespace fairalloc
