// Small dense-simplex solver for the fair-benchmark LPs:
//
//   maximize c'x  subject to  A x <= b,  x >= lower (default 0)
//
// Two-phase primal simplex on a dense tableau. Pricing is Dantzig (most
// negative reduced cost, ties to the lowest column index) and switches to
// Bland's rule permanently once the objective stalls, which makes cycling
// impossible; pivot tolerance 1e-9. Determinism: identical inputs take the
// identical pivot sequence.
//
// This is deliberately small and self-contained: the LPs here have at most a
// few hundred rows and columns of well-scaled coefficients in [-1, 1].
#pragma once

#include <vector>

#include "fairalloc/core.hpp"

namespace fairalloc {

struct DimensionMismatch : DomainError {
  using DomainError::DomainError;
};

// Thrown by callers that require an optimum (see fairopt); solve_lp itself
// reports these outcomes through LpStatus.
struct Infeasible : DomainError {
  using DomainError::DomainError;
};

struct Unbounded : DomainError {
  using DomainError::DomainError;
};

struct LinearProgram {
  std::vector<double> objective;          // size nv; maximized
  std::vector<std::vector<double>> rows;  // nr x nv inequality matrix
  std::vector<double> rhs;                // size nr
  std::vector<double> lower;              // size nv variable lower bounds, or empty for all-zero
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
  int iterations = 0;
};

LpSolution solve_lp(const LinearProgram& lp);

}  // namespace fairalloc
