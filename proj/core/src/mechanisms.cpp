#include "fairalloc/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace fairalloc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_m2(const Instance& inst, const char* who) {
  if (inst.m() != 2) throw WrongArity(std::string(who) + " requires exactly two resources");
}

MechanismResult finish(const std::vector<double>& shares, const Instance& inst) {
  MechanismResult res;
  res.allocation = allocation_from_shares(shares, inst);
  const auto sums = column_sums(res.allocation);
  for (int r = 0; r < static_cast<int>(sums.size()); ++r)
    if (sums[r] >= 1.0 - eps()) res.exhausted.push_back(r);
  return res;
}

}  // namespace

// ---------------------------------------------------------------------------
// DRF: uniform dominant share x* = 1 / max_r sum_i d_ir.
// ---------------------------------------------------------------------------
MechanismResult drf(const Instance& inst) {
  const int n = inst.n();
  const int m = inst.m();
  if (n == 0 || m < 2) throw WrongArity("drf requires a normalized instance");
  double worst = 0.0;
  for (int r = 0; r < m; ++r) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += inst.demands[i][r];
    worst = std::max(worst, sum);
  }
  return finish(std::vector<double>(n, 1.0 / worst), inst);
}

// ---------------------------------------------------------------------------
// F1: equal split, then raise the resource-1 fractions of the G2 frontier
// (argmin of A_{i,1} over G2) in lockstep. Each round's step is the smallest
// of: the gap to the next resource-1 level outside the frontier (G1 agents
// sit at 1/n), the remaining resource-1 capacity split over the frontier, and
// the remaining resource-2 capacity split over the frontier's growth rates.
// ---------------------------------------------------------------------------
MechanismResult f1(const Instance& inst) {
  require_m2(inst, "f1");
  const int n = inst.n();
  const double tol = eps();
  const auto part = partition(inst);
  const auto& g2 = part.groups[1];

  std::vector<double> y(n, 1.0 / n);
  std::vector<double> a1(n);  // resource-1 fractions
  double c1 = 1.0, c2 = 1.0;
  for (int i = 0; i < n; ++i) {
    a1[i] = inst.demands[i][0] / n;
    c1 -= a1[i];
    c2 -= inst.demands[i][1] / n;
  }

  std::vector<Round> trace;
  if (!g2.empty()) {
    std::vector<char> inP(n, 0);
    const int max_rounds = 4 * n + 16;
    for (int round = 0; round < max_rounds && c1 > tol && c2 > tol; ++round) {
      double level = kInf;
      for (int i : g2) level = std::min(level, a1[i]);
      std::vector<int> P;
      double invsum = 0.0;
      std::fill(inP.begin(), inP.end(), 0);
      for (int i : g2)
        if (a1[i] <= level + tol) {
          P.push_back(i);
          invsum += 1.0 / inst.demands[i][0];
          inP[i] = 1;
        }
      double next = kInf;
      for (int i = 0; i < n; ++i)
        if (!inP[i]) next = std::min(next, a1[i]);
      const double d0 = next - level;
      const double d1 = c1 / static_cast<double>(P.size());
      const double d2 = c2 / invsum;
      const double delta = std::min({d0, d1, d2});
      if (!(delta > 0.0)) break;  // degenerate tie exactly at exhaustion
      for (int i : P) {
        y[i] += delta / inst.demands[i][0];
        a1[i] += delta;
      }
      c1 -= delta * static_cast<double>(P.size());
      c2 -= delta * invsum;
      Round r;
      r.p2 = std::move(P);
      r.delta2 = delta;
      trace.push_back(std::move(r));
    }
  }
  MechanismResult res = finish(y, inst);
  res.trace = std::move(trace);
  return res;
}

// ---------------------------------------------------------------------------
// F2 and F2*: the two-frontier mechanism. Both groups' frontiers rise
// together; per round the raw steps (next-level gap, capped by capacity) are
// coupled so the groups' dominant-share gains stay in the ratio rho1:rho2,
// which is R1:R2 for f2 and the starred R1*:R2* for f2star. Capacities stay
// the actual remainders in both variants.
// ---------------------------------------------------------------------------
namespace {

MechanismResult f2_impl(const Instance& inst, bool starred, const char* who) {
  require_m2(inst, who);
  const int n = inst.n();
  const double tol = eps();
  const auto part = partition(inst);
  const auto& g1 = part.groups[0];
  const auto& g2 = part.groups[1];
  if (g1.empty() || g2.empty()) {
    // Degenerate single-group instance: equal split scaled uniformly until
    // exhaustion, i.e. exactly DRF.
    return drf(inst);
  }

  std::vector<double> y(n, 1.0 / n);
  std::vector<double> opp(n);  // fraction of the opposite (non-dominant) resource
  double col1 = 0.0, col2 = 0.0;
  for (int i = 0; i < n; ++i) {
    col1 += inst.demands[i][0] / n;
    col2 += inst.demands[i][1] / n;
  }
  for (int i : g1) opp[i] = inst.demands[i][1] / n;
  for (int i : g2) opp[i] = inst.demands[i][0] / n;

  StepQuantities q;
  q.r1 = 1.0 - col1;
  q.r2 = 1.0 - col2;
  double rho1 = q.r1, rho2 = q.r2;
  if (starred) {
    double dmin1 = kInf, dmin2 = kInf;
    for (int i : g2) dmin1 = std::min(dmin1, inst.demands[i][0]);
    for (int i : g1) dmin2 = std::min(dmin2, inst.demands[i][1]);
    q.r1s = q.r1 + dmin1 / n;
    q.r2s = q.r2 + dmin2 / n;
    rho1 = q.r1s;
    rho2 = q.r2s;
  }

  if (q.r1 <= tol || q.r2 <= tol) {
    // A resource is already (nearly) exhausted by the equal split; the
    // equal split is the answer.
    MechanismResult res = finish(y, inst);
    res.has_step2 = true;
    q.c1 = q.r1;
    q.c2 = q.r2;
    res.step2 = std::move(q);
    return res;
  }

  double c1 = q.r1, c2 = q.r2;
  std::vector<Round> trace;
  std::vector<char> in1(n, 0), in2(n, 0);
  const int max_rounds = 4 * n + 16;
  for (int round = 0; round < max_rounds && c1 > tol && c2 > tol; ++round) {
    double l1 = kInf, l2 = kInf;
    for (int i : g1) l1 = std::min(l1, opp[i]);
    for (int i : g2) l2 = std::min(l2, opp[i]);
    std::vector<int> P1, P2;
    double D1 = 0.0, D2 = 0.0;
    std::fill(in1.begin(), in1.end(), 0);
    std::fill(in2.begin(), in2.end(), 0);
    for (int i : g1)
      if (opp[i] <= l1 + tol) {
        P1.push_back(i);
        D1 += 1.0 / inst.demands[i][1];
        in1[i] = 1;
      }
    for (int i : g2)
      if (opp[i] <= l2 + tol) {
        P2.push_back(i);
        D2 += 1.0 / inst.demands[i][0];
        in2[i] = 1;
      }

    // Next resource-2 level outside P1 (the rest of G1 at their opposite
    // fractions, all of G2 at their dominant shares), and symmetrically for
    // P2. The cross-group term can graze the frontier only at exhaustion,
    // so the gaps are clamped at zero.
    double next1 = kInf, next2 = kInf;
    for (int i : g1)
      if (!in1[i]) next1 = std::min(next1, opp[i]);
    for (int i : g2) next1 = std::min(next1, y[i]);
    for (int i : g2)
      if (!in2[i]) next2 = std::min(next2, opp[i]);
    for (int i : g1) next2 = std::min(next2, y[i]);
    const double gap1 = std::max(0.0, next1 - l1);
    const double gap2 = std::max(0.0, next2 - l2);

    const double dbar1 = c2 / (static_cast<double>(P1.size()) + D1 * rho2 / rho1);
    const double dbar2 = c1 / (static_cast<double>(P2.size()) + D2 * rho1 / rho2);
    double s1 = std::min(gap1, dbar1);
    double s2 = std::min(gap2, dbar2);
    // Couple the steps: dominant-share gains s1*D1 and s2*D2 must stay in
    // ratio rho1:rho2, so shrink whichever side is ahead.
    if (s1 * D1 * rho2 <= s2 * D2 * rho1)
      s2 = s1 * D1 * rho2 / (D2 * rho1);
    else
      s1 = s2 * D2 * rho1 / (D1 * rho2);
    if (!(s1 > 0.0) && !(s2 > 0.0)) break;  // degenerate tie at exhaustion

    for (int i : P1) {
      y[i] += s1 / inst.demands[i][1];
      opp[i] += s1;
    }
    for (int i : P2) {
      y[i] += s2 / inst.demands[i][0];
      opp[i] += s2;
    }
    c1 -= s1 * D1 + s2 * static_cast<double>(P2.size());
    c2 -= s1 * static_cast<double>(P1.size()) + s2 * D2;
    q.ds1 += s1 * D1;
    q.ds2 += s2 * D2;
    q.p1 = P1;
    q.p2 = P2;
    q.d1 = D1;
    q.d2 = D2;

    Round r;
    r.p1 = std::move(P1);
    r.p2 = std::move(P2);
    r.delta1 = s1;
    r.delta2 = s2;
    trace.push_back(std::move(r));
  }

  MechanismResult res = finish(y, inst);
  res.trace = std::move(trace);
  res.has_step2 = true;
  q.c1 = c1;
  q.c2 = c2;
  res.step2 = std::move(q);
  return res;
}

}  // namespace

MechanismResult f2(const Instance& inst) { return f2_impl(inst, false, "f2"); }
MechanismResult f2star(const Instance& inst) { return f2_impl(inst, true, "f2star"); }

// ---------------------------------------------------------------------------
// F_g: water-filling on a strictly monotone bundle score. Each round scales
// the minimum-score frontier up to a common target: the next score level
// outside the frontier, unless some resource exhausts first.
// ---------------------------------------------------------------------------
namespace {

double eval_scaled(const ScoreFunction& g, const std::vector<double>& bundle, double s) {
  std::vector<double> v(bundle);
  for (double& x : v) x *= s;
  return g.eval(v);
}

// Smallest scale lambda >= 1 with g(lambda * bundle) = target, assuming
// g(bundle) <= target; bisection to 1e-12 in g-value.
double scale_to_level(const ScoreFunction& g, const std::vector<double>& bundle, double target) {
  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (eval_scaled(g, bundle, hi) < target) {
    hi *= 2.0;
    if (++guard > 100) throw NonMonotoneScore("score does not reach the target level under scaling");
  }
  if (hi == 1.0) return 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = eval_scaled(g, bundle, mid);
    if (v < target)
      lo = mid;
    else
      hi = mid;
    if (std::abs(v - target) <= 1e-12) return mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

MechanismResult f_g(const Instance& inst, const ScoreFunction& g) {
  const int n = inst.n();
  const int m = inst.m();
  if (n == 0 || m < 2) throw WrongArity("f_g requires a normalized instance");
  if (!g.eval) throw NonMonotoneScore("score function has no evaluator");
  const double tol = eps();

  // Diagnostic monotonicity sample: scaling a positive vector up must raise
  // the score strictly (this is implied by componentwise monotonicity; it is
  // a smoke check, not a proof).
  {
    const std::vector<std::vector<double>> probes = {std::vector<double>(m, 0.4),
                                                     std::vector<double>(m, 0.05),
                                                     inst.demands[0]};
    for (const auto& v : probes)
      if (!(eval_scaled(g, v, 1.25) > g.eval(v)))
        throw NonMonotoneScore("score '" + g.name + "' failed the sampled monotonicity check");
  }

  std::vector<double> y(n, 1.0 / n);
  std::vector<std::vector<double>> rows(n);
  std::vector<double> cap(m, 1.0);
  for (int i = 0; i < n; ++i) {
    rows[i].resize(m);
    for (int r = 0; r < m; ++r) {
      rows[i][r] = inst.demands[i][r] / n;
      cap[r] -= rows[i][r];
    }
  }
  std::vector<double> sc(n);
  for (int i = 0; i < n; ++i) sc[i] = g.eval(rows[i]);

  const auto depleted = [&] {
    return std::any_of(cap.begin(), cap.end(), [&](double c) { return c <= tol; });
  };

  std::vector<Round> trace;
  const int max_rounds = 4 * n + 16;
  for (int round = 0; round < max_rounds && !depleted(); ++round) {
    const double t = *std::min_element(sc.begin(), sc.end());
    std::vector<int> P;
    for (int i = 0; i < n; ++i)
      if (sc[i] <= t + tol) P.push_back(i);
    double t_next;
    if (static_cast<int>(P.size()) == n) {
      t_next = g.eval(std::vector<double>(m, 1.0));
    } else {
      t_next = kInf;
      for (int i = 0; i < n; ++i)
        if (sc[i] > t + tol) t_next = std::min(t_next, sc[i]);
    }

    double t_star;
    std::vector<double> lambda(P.size(), 1.0);
    if (g.homogeneous) {
      // Scaling member i to level tau uses lambda_i = tau / sc_i, so the
      // resource-r constraint sum (lambda_i - 1) A_ir <= cap_r is linear in
      // tau with the closed-form root below.
      t_star = t_next;
      for (int r = 0; r < m; ++r) {
        double rate = 0.0, held = 0.0;
        for (int i : P) {
          rate += rows[i][r] / sc[i];
          held += rows[i][r];
        }
        if (rate > 0.0) t_star = std::min(t_star, (cap[r] + held) / rate);
      }
      t_star = std::max(t_star, t);
      for (std::size_t p = 0; p < P.size(); ++p) lambda[p] = t_star / sc[P[p]];
    } else {
      const auto feasible = [&](double tau, std::vector<double>& lam) {
        for (std::size_t p = 0; p < P.size(); ++p)
          lam[p] = sc[P[p]] >= tau ? 1.0 : scale_to_level(g, rows[P[p]], tau);
        for (int r = 0; r < m; ++r) {
          double used = 0.0;
          for (std::size_t p = 0; p < P.size(); ++p) used += (lam[p] - 1.0) * rows[P[p]][r];
          if (used > cap[r] + 1e-15) return false;
        }
        return true;
      };
      std::vector<double> lam(P.size(), 1.0);
      if (feasible(t_next, lam)) {
        t_star = t_next;
        lambda = lam;
      } else {
        double lo = t, hi = t_next;
        lambda.assign(P.size(), 1.0);
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (feasible(mid, lam)) {
            lo = mid;
            lambda = lam;
          } else {
            hi = mid;
          }
        }
        t_star = lo;
      }
    }

    if (!(t_star > t)) break;  // capacity boundary coincides with the level
    for (std::size_t p = 0; p < P.size(); ++p) {
      const int i = P[p];
      for (int r = 0; r < m; ++r) {
        cap[r] -= (lambda[p] - 1.0) * rows[i][r];
        rows[i][r] *= lambda[p];
      }
      y[i] *= lambda[p];
      sc[i] = t_star;  // exact: keeps the frontier tied across rounds
    }
    Round rd;
    rd.p2 = std::move(P);
    rd.delta2 = t_star;
    trace.push_back(std::move(rd));
  }

  MechanismResult res = finish(y, inst);
  res.trace = std::move(trace);
  return res;
}

MechanismResult generalized_f1(const Instance& inst, int special) {
  if (inst.m() < 2) throw WrongArity("generalized_f1 requires at least two resources");
  if (special < 0) {
    const auto part = partition(inst);
    std::size_t best = 0;
    special = 0;
    for (int r = 0; r < inst.m(); ++r)
      if (part.groups[r].size() > best) {
        best = part.groups[r].size();
        special = r;
      }
  } else if (special >= inst.m()) {
    throw WrongArity("special resource index out of range");
  }
  return f_g(inst, score_coordinate(special));
}

// ---------------------------------------------------------------------------
// Hybrids: threshold dispatch on the minor-population ratio.
// ---------------------------------------------------------------------------
MechanismResult hybrid_sw(const Instance& inst) {
  require_m2(inst, "hybrid_sw");
  const auto part = partition(inst);
  const double threshold = 2.0 - std::sqrt(3.0) + 1.0 / (2.0 * inst.n());
  const bool use_f1 = part.alpha <= threshold;
  MechanismResult res = use_f1 ? f1(inst) : f2star(inst);
  res.dispatched = use_f1 ? "f1" : "f2star";
  return res;
}

MechanismResult hybrid_util(const Instance& inst) {
  require_m2(inst, "hybrid_util");
  const auto part = partition(inst);
  const double threshold = 1.0 / 3.0 + 1.0 / (3.0 * inst.n());
  const bool use_f1 = part.alpha <= threshold;
  MechanismResult res = use_f1 ? f1(inst) : f2star(inst);
  res.dispatched = use_f1 ? "f1" : "f2star";
  return res;
}

// ---------------------------------------------------------------------------
// Ready-made scores and the column-relabel helpers.
// ---------------------------------------------------------------------------
ScoreFunction score_coordinate(int r) {
  ScoreFunction g;
  g.eval = [r](const std::vector<double>& v) { return v.at(r); };
  g.homogeneous = true;
  g.name = "v" + std::to_string(r + 1);
  return g;
}

ScoreFunction score_dominant() {
  ScoreFunction g;
  g.eval = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); };
  g.homogeneous = true;
  g.name = "dom";
  return g;
}

ScoreFunction score_sum() {
  ScoreFunction g;
  g.eval = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); };
  g.homogeneous = true;
  g.name = "sum";
  return g;
}

ScoreFunction score_sum_product() {
  ScoreFunction g;
  g.eval = [](const std::vector<double>& v) {
    double sum = 0.0, prod = 1.0;
    for (double x : v) {
      sum += x;
      prod *= x;
    }
    return sum + prod;
  };
  g.homogeneous = false;
  g.name = "sum+prod";
  return g;
}

std::pair<Instance, bool> relabel_major_first(const Instance& inst) {
  if (inst.m() != 2) return {inst, false};
  const auto part = partition(inst);
  if (part.groups[1].size() <= part.groups[0].size()) return {inst, false};
  Instance out;
  out.demands.reserve(inst.demands.size());
  for (const auto& d : inst.demands) out.demands.push_back({d[1], d[0]});
  return {out, true};
}

Allocation swap_allocation_columns(const Allocation& alloc, int ra, int rb) {
  Allocation out = alloc;
  for (auto& row : out.rows) std::swap(row.at(ra), row.at(rb));
  return out;
}

}  // namespace fairalloc
