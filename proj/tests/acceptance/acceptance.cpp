// Acceptance gate: one check per release criterion, each printing a single
// [PASS]/[FAIL] line with the measured numbers. Exit code = number of
// failures. Runs from the build tree; needs only the shipped data files.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fairalloc/core.hpp"
#include "fairalloc/fairopt.hpp"
#include "fairalloc/instances.hpp"
#include "fairalloc/io.hpp"
#include "fairalloc/mechanisms.hpp"
#include "fairalloc/properties.hpp"
#include "fairalloc/rng.hpp"
#include "support/golden.hpp"
#include "support/oracles.hpp"

using namespace fairalloc;
using Clock = std::chrono::steady_clock;

namespace {

constexpr const char* kTracePath = FAIRALLOC_DATA_DIR "/sample_tasks.csv";

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Random tie-free two-group instances for the property sweeps.
Instance random_m2(SplitMix64& rng, int n) {
  std::vector<std::vector<double>> raw(n, std::vector<double>(2));
  for (int i = 0; i < n; ++i) {
    const int dom = static_cast<int>(rng.next_in(0, 1));
    raw[i][dom] = 1.0;
    raw[i][1 - dom] = static_cast<double>(rng.next_in(1, 99)) / 100.0;
  }
  return normalize(raw);
}

Instance random_m3(SplitMix64& rng, int n) {
  std::vector<std::vector<double>> raw(n, std::vector<double>(3));
  for (int i = 0; i < n; ++i) {
    const int dom = static_cast<int>(rng.next_in(0, 2));
    for (int r = 0; r < 3; ++r)
      raw[i][r] = r == dom ? 1.0 : static_cast<double>(rng.next_in(1, 99)) / 100.0;
  }
  return normalize(raw);
}

// Column-convention wrapper: relabel so the majority group sits on resource 1,
// run, swap the allocation back. Composes with the manipulation probe so the
// probe's misreports are free to flip the majority.
MechanismFn relabeled(MechanismResult (*mech)(const Instance&)) {
  return [mech](const Instance& inst) {
    const auto [oriented, swapped] = relabel_major_first(inst);
    MechanismResult res = mech(oriented);
    if (swapped) {
      res.allocation = swap_allocation_columns(res.allocation, 0, 1);
      for (int& r : res.exhausted) r = 1 - r;
    }
    return res;
  };
}

double share_sum(const MechanismResult& res) {
  double s = 0.0;
  for (double y : res.allocation.shares) s += y;
  return s;
}

// ---------------------------------------------------------------------------
// 1. Worked-example goldens, exact to 1e-9, each solve under a millisecond.
// ---------------------------------------------------------------------------
Outcome criterion_goldens() {
  Outcome out;
  const Instance ex1 = normalize(golden::example1_demands());
  const Instance ex2 = normalize(golden::example2_demands());

  const auto close_rows = [](const std::vector<std::vector<double>>& a,
                             const std::vector<std::vector<double>>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a[i].size(); ++j)
        worst = std::max(worst, std::fabs(a[i][j] - b[i][j]));
    return worst;
  };

  double worst = 0.0;
  worst = std::max(worst, close_rows(drf(ex1).allocation.rows, golden::ex1_drf_rows()));
  worst = std::max(worst, close_rows(f1(ex1).allocation.rows, golden::ex1_f1_rows()));
  worst = std::max(worst, close_rows(f2(ex1).allocation.rows, golden::ex1_f2_rows()));
  worst = std::max(worst, close_rows(f2star(ex1).allocation.rows, golden::ex1_f2star_rows()));
  worst = std::max(worst, close_rows(f2(ex2).allocation.rows, golden::ex2_f2_rows()));
  worst = std::max(worst,
                   std::fabs(social_welfare(f2(ex1).allocation, ex1) - golden::ex1_f2_sw));
  worst = std::max(
      worst, std::fabs(social_welfare(f2star(ex1).allocation, ex1) - golden::ex1_f2star_sw));
  worst = std::max(worst,
                   std::fabs(social_welfare(f1(ex1).allocation, ex1) - golden::ex1_f1_sw));
  worst = std::max(worst,
                   std::fabs(social_welfare(drf(ex1).allocation, ex1) - golden::ex1_drf_sw));
  if (worst > 1e-9) out.fail("golden deviation " + fmt(worst) + " > 1e-9");

  // Median-of-11 solve times, each required under 1 ms.
  for (const auto& [name, run] : std::vector<std::pair<std::string, std::function<void()>>>{
           {"drf", [&] { drf(ex1); }},
           {"f1", [&] { f1(ex1); }},
           {"f2", [&] { f2(ex1); }},
           {"f2star", [&] { f2star(ex1); }}}) {
    std::vector<double> times;
    for (int rep = 0; rep < 11; ++rep) {
      const auto t0 = Clock::now();
      run();
      times.push_back(secs_since(t0));
    }
    std::sort(times.begin(), times.end());
    if (times[5] > 1e-3) out.fail(name + " median " + fmt(times[5] * 1e3) + " ms > 1 ms");
  }
  out.note("worst golden deviation " + fmt(worst));
  return out;
}

// ---------------------------------------------------------------------------
// 2. The manipulation probe finds the known f2 misreport and stays quiet for
//    the mechanisms that should be strategyproof.
// ---------------------------------------------------------------------------
Outcome criterion_probe() {
  Outcome out;
  const auto t0 = Clock::now();
  const Instance ex2 = normalize(golden::example2_demands());
  const auto grid = sp_grid(2, 100);

  const auto finding = sp_probe(relabeled(f2), ex2, 1, grid);
  if (!finding) {
    out.fail("no f2 finding on the worked example");
  } else {
    if (finding->false_demand != golden::ex2_manipulated_report())
      out.fail("wrong report found");
    if (std::fabs(finding->gain - golden::ex2_manipulation_gain) > 1e-6)
      out.fail("gain " + fmt(finding->gain) + " != " + fmt(golden::ex2_manipulation_gain));
  }

  const std::vector<std::pair<std::string, MechanismFn>> honest = {
      {"drf", [](const Instance& i) { return drf(i); }},
      {"f1", relabeled(f1)},
      {"f2star", relabeled(f2star)},
      {"fg-sum", [](const Instance& i) { return f_g(i, score_sum()); }},
      {"fg-sum+prod", [](const Instance& i) { return f_g(i, score_sum_product()); }},
  };
  SplitMix64 rng(20001);
  int findings = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.next_in(0, 4));
    const Instance inst = random_m2(rng, n);
    for (const auto& [name, fn] : honest)
      for (int agent = 0; agent < n; ++agent)
        if (const auto f = sp_probe(fn, inst, agent, grid)) {
          ++findings;
          if (findings <= 3)
            out.fail(name + " manipulable: instance " + std::to_string(t) + " agent " +
                     std::to_string(agent) + " gain " + fmt(f->gain));
        }
  }
  if (findings > 3) out.fail(std::to_string(findings) + " findings total");
  const double dt = secs_since(t0);
  if (dt > 300.0) out.fail("runtime " + fmt(dt) + " s > 300 s");
  out.note("200 instances probed clean in " + fmt(dt) + " s");
  return out;
}

// ---------------------------------------------------------------------------
// 3. Share incentive, envy-freeness, Pareto optimality, non-wastefulness on
//    2000 random instances at the 1e-9 tolerance.
// ---------------------------------------------------------------------------
Outcome criterion_properties() {
  Outcome out;
  SplitMix64 rng(30001);
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 2 + static_cast<int>(rng.next_in(0, 8));
    const Instance inst = random_m2(rng, n);
    const std::vector<std::pair<std::string, MechanismFn>> mechs = {
        {"drf", [](const Instance& i) { return drf(i); }},
        {"f1", relabeled(f1)},
        {"f2", relabeled(f2)},
        {"f2star", relabeled(f2star)},
        {"hybrid_sw", relabeled(hybrid_sw)},
        {"hybrid_util", relabeled(hybrid_util)},
        {"fg-sum+prod", [](const Instance& i) { return f_g(i, score_sum_product()); }},
    };
    for (const auto& [name, fn] : mechs) {
      const auto rep = check_all(fn(inst).allocation, inst);
      ++checked;
      if (!rep.all_pass()) {
        out.fail(name + " violates a property on two-resource instance " + std::to_string(t));
        if (!out.pass) return out;
      }
    }
  }
  for (int t = 0; t < 1000; ++t) {
    const int n = 3 + static_cast<int>(rng.next_in(0, 7));
    const Instance inst = random_m3(rng, n);
    const std::vector<std::pair<std::string, MechanismFn>> mechs = {
        {"drf", [](const Instance& i) { return drf(i); }},
        {"gf1", [](const Instance& i) { return generalized_f1(i); }},
        {"fg-sum", [](const Instance& i) { return f_g(i, score_sum()); }},
        {"fg-sum+prod", [](const Instance& i) { return f_g(i, score_sum_product()); }},
    };
    for (const auto& [name, fn] : mechs) {
      const auto rep = check_all(fn(inst).allocation, inst);
      ++checked;
      if (!rep.all_pass()) {
        out.fail(name + " violates a property on three-resource instance " +
                 std::to_string(t));
        if (!out.pass) return out;
      }
    }
  }
  out.note(std::to_string(checked) + " mechanism runs, all four properties hold");
  return out;
}

// ---------------------------------------------------------------------------
// 4. The LP benchmark against the grid brute force on tiny instances.
// ---------------------------------------------------------------------------
Outcome criterion_benchmark_vs_grid() {
  Outcome out;
  const auto t0 = Clock::now();
  SplitMix64 rng(40001);
  double worst_gap = 0.0;
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + static_cast<int>(rng.next_in(0, 1));
    const Instance inst = random_m2(rng, n);
    const FairBenchmark bench = fair_benchmark(inst);
    const auto grid = oracles::grid_fair_benchmark(inst);
    if (grid.sw_opt < 0.0) {
      out.fail("grid found no feasible point on instance " + std::to_string(t));
      return out;
    }
    if (bench.sw_opt < grid.sw_opt - 1e-9 || bench.util_opt < grid.util_opt - 1e-9) {
      out.fail("LP fell below the grid lower bound on instance " + std::to_string(t));
      return out;
    }
    worst_gap = std::max(worst_gap, bench.sw_opt - grid.sw_opt);
    worst_gap = std::max(worst_gap, bench.util_opt - grid.util_opt);
  }
  if (worst_gap > 2e-3) out.fail("worst gap " + fmt(worst_gap) + " > 2e-3");
  const double dt = secs_since(t0);
  if (dt > 120.0) out.fail("runtime " + fmt(dt) + " s > 120 s");
  out.note("500 instances, worst gap " + fmt(worst_gap) + ", " + fmt(dt) + " s");
  return out;
}

// ---------------------------------------------------------------------------
// 5. Random two-resource instances never exceed the closed-form worst cases
//    (evaluated at the realized alpha).
// ---------------------------------------------------------------------------
Outcome criterion_ratio_conformance() {
  Outcome out;
  double worst_slack = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < 1000; ++t) {
    const double alpha = (1 + t % 50) / 100.0;
    const Instance inst = gen_alpha(100, alpha, stream_seed(50001, t));
    const auto part = partition(inst);
    const FairBenchmark bench = fair_benchmark(inst);
    const std::vector<std::pair<MechanismTag, MechanismResult>> runs = {
        {MechanismTag::Drf, drf(inst)},
        {MechanismTag::F1, f1(inst)},
        {MechanismTag::F2, f2(inst)},
        {MechanismTag::F2Star, f2star(inst)},
    };
    for (const auto& [tag, res] : runs) {
      const RatioPair ratio = fair_ratio(res, bench);
      const TheoreticalBounds bound = theoretical_ratios(tag, part.alpha, 0.0, 100, 2);
      worst_slack = std::max(worst_slack, ratio.sw_ratio - bound.sw_bound);
      worst_slack = std::max(worst_slack, ratio.util_ratio - bound.util_bound);
      if (ratio.sw_ratio > bound.sw_bound + 1e-3 ||
          ratio.util_ratio > bound.util_bound + 1e-3) {
        out.fail("bound exceeded at trial " + std::to_string(t));
        return out;
      }
    }
  }
  out.note("1000 instances x 4 mechanisms, worst bound slack " + fmt(worst_slack));
  return out;
}

// ---------------------------------------------------------------------------
// 6. The adversarial families realize at least 95% of their worst-case
//    ratios at n = 2000, each within a minute.
// ---------------------------------------------------------------------------
Outcome criterion_adversarial() {
  Outcome out;
  struct Family {
    std::string name;
    Instance (*make)(int, double);
    MechanismResult (*mech)(const Instance&);
    MechanismTag tag;
    double alpha;
  };
  const std::vector<Family> families = {
      {"adv_drf", adv_drf, drf, MechanismTag::Drf, 0.25},
      {"adv_f1", adv_f1, f1, MechanismTag::F1, 0.3},
      {"adv_f2", adv_f2, f2, MechanismTag::F2, 0.25},
  };
  for (const auto& fam : families) {
    const auto t0 = Clock::now();
    const Instance inst = fam.make(2000, fam.alpha);
    const auto part = partition(inst);
    const RatioPair ratio = fair_ratio(fam.mech(inst), fair_benchmark(inst));
    const TheoreticalBounds bound = theoretical_ratios(fam.tag, part.alpha, 0.0, 2000, 2);
    const double dt = secs_since(t0);
    if (ratio.sw_ratio < 0.95 * bound.sw_bound)
      out.fail(fam.name + " sw " + fmt(ratio.sw_ratio) + " < 0.95 * " + fmt(bound.sw_bound));
    if (ratio.util_ratio < 0.95 * bound.util_bound)
      out.fail(fam.name + " util " + fmt(ratio.util_ratio) + " < 0.95 * " +
               fmt(bound.util_bound));
    if (dt > 60.0) out.fail(fam.name + " took " + fmt(dt) + " s > 60 s");
    out.note(fam.name + " sw " + fmt(ratio.sw_ratio) + "/" + fmt(bound.sw_bound) + " util " +
             fmt(ratio.util_ratio) + "/" + fmt(bound.util_bound) + " in " + fmt(dt) + " s");
  }
  return out;
}

// ---------------------------------------------------------------------------
// 7. Three-resource worst cases sit near their closed forms, and on random
//    instances the generalized mechanism is at least as good as plain DRF
//    wherever the closed forms say it strictly wins.
// ---------------------------------------------------------------------------
Outcome criterion_three_resources() {
  Outcome out;
  struct Case {
    std::string name;
    Instance inst;
  };
  const std::vector<Case> cases = {
      {"case1(a=0.5,b=0.1)", adv_thm6_case1(900, 3, 0.5, 0.1)},
      {"case2(a=0.3,b=0.8)", adv_thm6_case2(900, 3, 0.3, 0.8)},
  };
  for (const auto& c : cases) {
    const auto part = partition(c.inst);
    const FairPoint opt = max_fair_sw(c.inst);
    for (const auto& [tag, res] :
         std::vector<std::pair<MechanismTag, MechanismResult>>{
             {MechanismTag::GeneralizedF1, generalized_f1(c.inst)},
             {MechanismTag::Drf, drf(c.inst)}}) {
      const double ratio = opt.value / share_sum(res);
      const TheoreticalBounds bound =
          theoretical_ratios(tag, part.alpha, part.beta, c.inst.n(), 3);
      const double rel = std::fabs(ratio - bound.sw_bound) / bound.sw_bound;
      if (rel > 0.10)
        out.fail(c.name + (tag == MechanismTag::Drf ? " drf" : " gf1") + " ratio " +
                 fmt(ratio) + " vs " + fmt(bound.sw_bound) + " off by " + fmt(rel));
      out.note(c.name + (tag == MechanismTag::Drf ? " drf " : " gf1 ") + fmt(ratio) + "/" +
               fmt(bound.sw_bound));
    }
  }

  // 9 x 9 parameter grid, 100 trials per cell.
  const auto t0 = Clock::now();
  int strict_cells = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();
  std::uint64_t trial_id = 0;
  for (int ia = 1; ia <= 9; ++ia) {
    for (int ib = 1; ib <= 9; ++ib) {
      const double alpha = ia / 10.0, beta = ib / 10.0;
      const auto gf1_bound = theoretical_ratios(MechanismTag::GeneralizedF1, alpha, beta, 100, 3);
      const auto drf_bound = theoretical_ratios(MechanismTag::Drf, alpha, beta, 100, 3);
      const bool strict = gf1_bound.sw_bound < drf_bound.sw_bound - 1e-12;
      double mean_gf1 = 0.0, mean_drf = 0.0;
      for (int trial = 0; trial < 100; ++trial) {
        const Instance inst = gen_alpha_beta(100, 3, alpha, beta, stream_seed(70001, trial_id++));
        const double opt = max_fair_sw(inst).value;
        mean_gf1 += opt / share_sum(generalized_f1(inst));
        mean_drf += opt / share_sum(drf(inst));
      }
      mean_gf1 /= 100.0;
      mean_drf /= 100.0;
      if (strict) {
        ++strict_cells;
        worst_margin = std::max(worst_margin, mean_gf1 - mean_drf);
        if (mean_gf1 > mean_drf + 1e-3)
          out.fail("cell a=" + fmt(alpha) + " b=" + fmt(beta) + ": gf1 mean " + fmt(mean_gf1) +
                   " > drf mean " + fmt(mean_drf) + " + 1e-3");
      }
    }
  }
  out.note(std::to_string(strict_cells) + " strict cells, worst gf1-drf margin " +
           fmt(worst_margin) + ", grid in " + fmt(secs_since(t0)) + " s");
  return out;
}

// ---------------------------------------------------------------------------
// 8. Sweep shape: f2star beats drf pointwise; f1 and f2star trade places at
//    a moderate alpha; the shipped trace behaves like the theory says.
// ---------------------------------------------------------------------------
Outcome criterion_sweep_shape() {
  Outcome out;
  const int kTrials = 1000;
  std::vector<double> alphas;
  for (int k = 1; k <= 10; ++k) alphas.push_back(0.05 * k);

  std::vector<double> drf_mean(alphas.size(), 0.0), f1_mean(alphas.size(), 0.0),
      f2s_mean(alphas.size(), 0.0);
  std::uint64_t trial_id = 0;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    for (int t = 0; t < kTrials; ++t) {
      const Instance inst = gen_alpha(100, alphas[a], stream_seed(80001, trial_id++));
      const FairBenchmark bench = fair_benchmark(inst);
      drf_mean[a] += fair_ratio(drf(inst), bench).sw_ratio;
      f1_mean[a] += fair_ratio(f1(inst), bench).sw_ratio;
      f2s_mean[a] += fair_ratio(f2star(inst), bench).sw_ratio;
    }
    drf_mean[a] /= kTrials;
    f1_mean[a] /= kTrials;
    f2s_mean[a] /= kTrials;
  }

  for (std::size_t a = 0; a < alphas.size(); ++a)
    if (f2s_mean[a] >= drf_mean[a])
      out.fail("f2star does not beat drf at alpha " + fmt(alphas[a]));

  // f1 must win at the unbalanced end, lose at the balanced end, and flip
  // inside [0.15, 0.35].
  if (f1_mean.front() >= f2s_mean.front()) out.fail("f1 does not win at alpha 0.05");
  if (f1_mean.back() <= f2s_mean.back()) out.fail("f1 does not lose at alpha 0.5");
  double cross = -1.0;
  for (std::size_t a = 0; a + 1 < alphas.size(); ++a)
    if (f1_mean[a] <= f2s_mean[a] && f1_mean[a + 1] > f2s_mean[a + 1]) {
      cross = alphas[a + 1];
      break;
    }
  if (cross < 0.15 - 1e-12 || cross > 0.35 + 1e-12)
    out.fail("f1/f2star crossing at alpha " + fmt(cross) + " outside [0.15, 0.35]");
  out.note("crossing at alpha " + fmt(cross));

  // Trace comparison: raw social welfare and utilization, no oracle needed.
  double drf_sw = 0.0, f1_sw = 0.0, f2s_sw = 0.0;
  double drf_u = 0.0, f1_u = 0.0, f2s_u = 0.0;
  const int kTraceTrials = 500;
  for (int t = 0; t < kTraceTrials; ++t) {
    const Instance inst = ingest_trace(kTracePath, 100, stream_seed(80777, t)).instance;
    const auto a = drf(inst), b = f1(inst), c = f2star(inst);
    drf_sw += share_sum(a);
    f1_sw += share_sum(b);
    f2s_sw += share_sum(c);
    drf_u += utilization(a.allocation);
    f1_u += utilization(b.allocation);
    f2s_u += utilization(c.allocation);
  }
  if (f1_sw <= drf_sw) out.fail("trace: f1 welfare does not beat drf");
  if (f2s_sw <= drf_sw) out.fail("trace: f2star welfare does not beat drf");
  if (f1_u <= drf_u) out.fail("trace: f1 utilization does not beat drf");
  if (f2s_u <= drf_u) out.fail("trace: f2star utilization does not beat drf");
  out.note("trace sw margins f1 " + fmt((f1_sw - drf_sw) / kTraceTrials) + ", f2star " +
           fmt((f2s_sw - drf_sw) / kTraceTrials));
  return out;
}

// ---------------------------------------------------------------------------
// 9. The hybrids meet their single-objective guarantees with the n-dependent
//    constants.
// ---------------------------------------------------------------------------
Outcome criterion_hybrids() {
  Outcome out;
  const int n = 100;
  const double sw_cap = 3.0 - std::sqrt(3.0) + 1.0 / (2.0 * n);
  const double util_cap = 3.0 / (2.0 - 1.0 / n);
  double worst_sw = 0.0, worst_util = 0.0;
  for (int t = 0; t < 500; ++t) {
    const double alpha = (1 + t % 50) / 100.0;
    const Instance inst = gen_alpha(n, alpha, stream_seed(90001, t));
    const FairBenchmark bench = fair_benchmark(inst);
    const double sw_ratio = fair_ratio(hybrid_sw(inst), bench).sw_ratio;
    const double util_ratio = fair_ratio(hybrid_util(inst), bench).util_ratio;
    worst_sw = std::max(worst_sw, sw_ratio);
    worst_util = std::max(worst_util, util_ratio);
    if (sw_ratio > sw_cap + 1e-3) {
      out.fail("hybrid_sw ratio " + fmt(sw_ratio) + " > " + fmt(sw_cap) + " at trial " +
               std::to_string(t));
      return out;
    }
    if (util_ratio > util_cap + 1e-3) {
      out.fail("hybrid_util ratio " + fmt(util_ratio) + " > " + fmt(util_cap) + " at trial " +
               std::to_string(t));
      return out;
    }
  }
  out.note("worst hybrid_sw " + fmt(worst_sw) + " (cap " + fmt(sw_cap) + "), worst hybrid_util " +
           fmt(worst_util) + " (cap " + fmt(util_cap) + ")");
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Outcome (*)()>> criteria = {
      {"worked-example goldens and sub-millisecond solves", criterion_goldens},
      {"manipulation probe: known finding, quiet elsewhere", criterion_probe},
      {"SI/EF/PO/non-wastefulness on 2000 random instances", criterion_properties},
      {"LP benchmark vs grid brute force", criterion_benchmark_vs_grid},
      {"closed-form bound conformance on random instances", criterion_ratio_conformance},
      {"adversarial families realize their ratios", criterion_adversarial},
      {"three-resource worst cases and dominance grid", criterion_three_resources},
      {"sweep shape and trace comparison", criterion_sweep_shape},
      {"hybrid single-objective guarantees", criterion_hybrids},
  };

  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = Clock::now();
    Outcome res;
    try {
      res = fn();
    } catch (const std::exception& e) {
      res.fail(std::string("exception: ") + e.what());
    }
    if (!res.pass) ++failures;
    std::printf("[%s] %s (%.1f s)%s%s\n", res.pass ? "PASS" : "FAIL", name.c_str(),
                secs_since(t0), res.detail.empty() ? "" : " -- ", res.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
