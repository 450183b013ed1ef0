#include "fairalloc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fairalloc {

namespace {

constexpr double kPivTol = 1e-9;

// Dense tableau in one flat buffer (row-major, stride ncols+1; the last entry
// of each row is the rhs). Flat storage keeps the pivot loops on contiguous
// memory, which matters once the row-generation callers hand us a few hundred
// rows.
struct Tableau {
  std::vector<double> a;
  std::vector<int> basis;  // basic column per row
  int ncols = 0;
  int nr = 0;

  int stride() const { return ncols + 1; }
  double* row(int i) { return a.data() + static_cast<std::size_t>(i) * stride(); }
  const double* row(int i) const { return a.data() + static_cast<std::size_t>(i) * stride(); }

  void pivot(int pr, int pc) {
    double* prow = row(pr);
    const double inv = 1.0 / prow[pc];
    for (int j = 0; j <= ncols; ++j) prow[j] *= inv;
    prow[pc] = 1.0;  // exact
    for (int i = 0; i < nr; ++i) {
      if (i == pr) continue;
      double* r = row(i);
      const double f = r[pc];
      if (f == 0.0) continue;
      for (int j = 0; j <= ncols; ++j) r[j] -= f * prow[j];
      r[pc] = 0.0;  // exact
    }
    basis[pr] = pc;
  }

  // Eliminate basic columns from a freshly built reduced-cost row.
  void reduce(std::vector<double>& z) const {
    for (int i = 0; i < nr; ++i) {
      const double f = z[basis[i]];
      if (f == 0.0) continue;
      const double* r = row(i);
      for (int j = 0; j <= ncols; ++j) z[j] -= f * r[j];
      z[basis[i]] = 0.0;
    }
  }

  void erase_row(int i) {
    a.erase(a.begin() + static_cast<std::size_t>(i) * stride(),
            a.begin() + static_cast<std::size_t>(i + 1) * stride());
    basis.erase(basis.begin() + i);
    --nr;
  }
};

// Runs the simplex loop on (tab, z) until optimal/unbounded/iteration cap.
// Returns false on unbounded. `allowed` masks the columns pricing may enter.
bool iterate(Tableau& tab, std::vector<double>& z, const std::vector<char>& allowed,
             int& iterations) {
  const int ncols = tab.ncols;
  bool bland = false;
  int stall = 0;
  double best = -std::numeric_limits<double>::infinity();
  const int cap = 2000 + 60 * (tab.nr + ncols);

  for (int it = 0; it < cap; ++it) {
    // Entering column.
    int pc = -1;
    if (!bland) {
      double most = -kPivTol;
      for (int j = 0; j < ncols; ++j)
        if (allowed[j] && z[j] < most) {
          most = z[j];
          pc = j;
        }
    } else {
      for (int j = 0; j < ncols; ++j)
        if (allowed[j] && z[j] < -kPivTol) {
          pc = j;
          break;
        }
    }
    if (pc < 0) return true;  // optimal

    // Ratio test; ties to the smallest basis index for determinism.
    int pr = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tab.nr; ++i) {
      const double a = tab.row(i)[pc];
      if (a <= kPivTol) continue;
      const double ratio = tab.row(i)[ncols] / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && (pr < 0 || tab.basis[i] < tab.basis[pr]))) {
        best_ratio = ratio;
        pr = i;
      }
    }
    if (pr < 0) return false;  // unbounded direction

    tab.pivot(pr, pc);
    // Objective row update: same row operation as any other row.
    const double f = z[pc];
    if (f != 0.0) {
      const double* prow = tab.row(pr);
      for (int j = 0; j <= ncols; ++j) z[j] -= f * prow[j];
      z[pc] = 0.0;
    }
    ++iterations;

    // Stall detection: z[rhs] tracks the running objective value.
    const double val = z[ncols];
    if (val > best + 1e-12) {
      best = val;
      stall = 0;
    } else if (!bland && ++stall >= 64) {
      bland = true;  // anti-cycling fallback
    }
  }
  throw Error("simplex iteration cap exceeded");
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const int nv = static_cast<int>(lp.objective.size());
  const int nr = static_cast<int>(lp.rows.size());
  if (static_cast<int>(lp.rhs.size()) != nr)
    throw DimensionMismatch("rhs size does not match row count");
  for (const auto& row : lp.rows)
    if (static_cast<int>(row.size()) != nv)
      throw DimensionMismatch("row width does not match objective size");
  if (!lp.lower.empty() && static_cast<int>(lp.lower.size()) != nv)
    throw DimensionMismatch("lower-bound size does not match objective size");
  for (double v : lp.objective)
    if (!std::isfinite(v)) throw DimensionMismatch("non-finite objective entry");

  const std::vector<double> lb =
      lp.lower.empty() ? std::vector<double>(nv, 0.0) : lp.lower;

  LpSolution sol;
  if (nr == 0) {
    // Only the lower bounds: any positive objective direction is unbounded.
    for (double c : lp.objective)
      if (c > kPivTol) {
        sol.status = LpStatus::Unbounded;
        return sol;
      }
    sol.status = LpStatus::Optimal;
    sol.x = lb;
    for (int j = 0; j < nv; ++j) sol.value += lp.objective[j] * lb[j];
    return sol;
  }

  // Shift x' = x - lb so x' >= 0.
  std::vector<double> b(nr);
  for (int i = 0; i < nr; ++i) {
    double dot = 0.0;
    for (int j = 0; j < nv; ++j) dot += lp.rows[i][j] * lb[j];
    b[i] = lp.rhs[i] - dot;
  }

  int nart = 0;
  for (double v : b)
    if (v < 0.0) ++nart;

  Tableau tab;
  tab.ncols = nv + nr + nart;
  tab.nr = nr;
  tab.a.assign(static_cast<std::size_t>(nr) * (tab.ncols + 1), 0.0);
  tab.basis.assign(nr, -1);
  int art = 0;
  for (int i = 0; i < nr; ++i) {
    double* r = tab.row(i);
    const double sgn = b[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < nv; ++j) r[j] = sgn * lp.rows[i][j];
    r[nv + i] = sgn;
    r[tab.ncols] = sgn * b[i];
    if (b[i] < 0.0) {
      r[nv + nr + art] = 1.0;
      tab.basis[i] = nv + nr + art;
      ++art;
    } else {
      tab.basis[i] = nv + i;
    }
  }

  std::vector<char> allowed(tab.ncols, 1);

  // Phase 1: drive the artificials to zero (maximize -sum of artificials).
  if (nart > 0) {
    std::vector<double> z(tab.ncols + 1, 0.0);
    for (int j = nv + nr; j < tab.ncols; ++j) z[j] = 1.0;  // z = -c, c = -1 on artificials
    tab.reduce(z);
    if (!iterate(tab, z, allowed, sol.iterations))
      throw Error("phase-1 objective is bounded by construction");
    double infeas = 0.0;
    for (int i = 0; i < nr; ++i)
      if (tab.basis[i] >= nv + nr) infeas += tab.row(i)[tab.ncols];
    if (infeas > 1e-7) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Pivot leftover (zero-valued) artificials out; drop redundant rows.
    for (int i = tab.nr - 1; i >= 0; --i) {
      if (tab.basis[i] < nv + nr) continue;
      int pc = -1;
      for (int j = 0; j < nv + nr; ++j)
        if (std::abs(tab.row(i)[j]) > kPivTol) {
          pc = j;
          break;
        }
      if (pc >= 0) {
        tab.pivot(i, pc);
      } else {
        tab.erase_row(i);
      }
    }
    // Chop the artificial columns (move rhs left, shrink rows).
    Tableau chopped;
    chopped.ncols = nv + nr;
    chopped.nr = tab.nr;
    chopped.basis = tab.basis;
    chopped.a.resize(static_cast<std::size_t>(tab.nr) * (chopped.ncols + 1));
    for (int i = 0; i < tab.nr; ++i) {
      const double* src = tab.row(i);
      double* dst = chopped.row(i);
      for (int j = 0; j < nv + nr; ++j) dst[j] = src[j];
      dst[nv + nr] = src[tab.ncols];
    }
    tab = std::move(chopped);
    allowed.assign(tab.ncols, 1);
  }

  // Phase 2.
  std::vector<double> z(tab.ncols + 1, 0.0);
  for (int j = 0; j < nv; ++j) z[j] = -lp.objective[j];
  tab.reduce(z);
  if (!iterate(tab, z, allowed, sol.iterations)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  std::vector<double> xs(tab.ncols, 0.0);
  for (int i = 0; i < tab.nr; ++i) xs[tab.basis[i]] = tab.row(i)[tab.ncols];
  sol.x.assign(nv, 0.0);
  sol.value = 0.0;
  for (int j = 0; j < nv; ++j) {
    sol.x[j] = xs[j] + lb[j];
    sol.value += lp.objective[j] * sol.x[j];
  }
  sol.status = LpStatus::Optimal;
  return sol;
}

}  // namespace fairalloc
