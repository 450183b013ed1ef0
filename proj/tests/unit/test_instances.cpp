#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "fairalloc/core.hpp"
#include "fairalloc/fairopt.hpp"
#include "fairalloc/instances.hpp"
#include "fairalloc/mechanisms.hpp"
#include "support/util.hpp"

using namespace fairalloc;

namespace {

bool on_centesimal_grid(double v) {
  const double scaled = v * 100.0;
  return std::fabs(scaled - std::round(scaled)) <= 1e-9 && v >= 0.01 - 1e-12 &&
         v <= 1.0 + 1e-12;
}

std::string temp_file(const std::string& name) {
  return std::string("/tmp/fairalloc_test_") + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("round_half_up rounds .5 upward") {
  CHECK(round_half_up(0.5) == 1);
  CHECK(round_half_up(1.5) == 2);
  CHECK(round_half_up(2.4) == 2);
  CHECK(round_half_up(2.6) == 3);
  CHECK(round_half_up(0.49) == 0);
}

TEST_CASE("gen_alpha hits the requested group sizes exactly") {
  for (const auto& [n, alpha] : {std::pair{10, 0.3}, {10, 0.25}, {7, 0.5}, {100, 0.05},
                                 {100, 0.345}, {3, 0.5}, {2, 0.5}}) {
    const Instance inst = gen_alpha(n, alpha, 99);
    const auto part = partition(inst);
    const int want_minor = round_half_up(n * alpha);
    CHECK(static_cast<int>(part.groups[1].size()) == want_minor);
    CHECK(static_cast<int>(part.groups[0].size()) == n - want_minor);
  }
}

TEST_CASE("gen_alpha draws on the centesimal grid and avoids ambiguous ties") {
  const Instance inst = gen_alpha(200, 0.4, 31);
  const auto part = partition(inst);
  for (int i = 0; i < inst.n(); ++i)
    for (double v : inst.demands[i]) CHECK(on_centesimal_grid(v));
  // Group-2 rows must not draw resource-1 demand 1.00, which would flip their
  // dominant resource and silently change the partition.
  for (int i : part.groups[1]) CHECK(inst.demands[i][0] <= 0.99 + 1e-12);
  for (int i : part.groups[0]) CHECK(inst.demands[i][0] == 1.0);
}

TEST_CASE("gen_alpha rejects bad parameters") {
  CHECK_THROWS_AS(gen_alpha(10, 0.0, 1), BadAlpha);
  CHECK_THROWS_AS(gen_alpha(10, 0.51, 1), BadAlpha);
  CHECK_THROWS_AS(gen_alpha(10, -0.2, 1), BadAlpha);
  CHECK_THROWS_AS(gen_alpha(2, 0.1, 1), BadAlpha);  // rounds to an empty group
}

TEST_CASE("gen_alpha is a pure function of (n, alpha, seed)") {
  const Instance a = gen_alpha(40, 0.3, 1234);
  const Instance b = gen_alpha(40, 0.3, 1234);
  CHECK(a.demands == b.demands);
  const Instance c = gen_alpha(40, 0.3, 1235);
  CHECK(a.demands != c.demands);
}

TEST_CASE("gen_alpha_beta hits group sizes, grid, and the tie guard for m = 3") {
  const Instance inst = gen_alpha_beta(150, 3, 0.4, 0.3, 7);
  const auto part = partition(inst);
  const int outside = round_half_up(150 * 0.4);
  CHECK(static_cast<int>(part.groups[0].size()) == 150 - outside);
  CHECK(static_cast<int>(part.groups[1].size() + part.groups[2].size()) == outside);
  for (int i = 0; i < inst.n(); ++i)
    for (double v : inst.demands[i]) CHECK(on_centesimal_grid(v));
  for (int r : {1, 2})
    for (int i : part.groups[r]) CHECK(inst.demands[i][0] <= 0.99 + 1e-12);
  REQUIRE(part.beta_defined);
  CHECK(part.beta > 0.0);
  CHECK(part.beta < 1.0);
}

TEST_CASE("gen_alpha_beta rejects bad parameters") {
  CHECK_THROWS_AS(gen_alpha_beta(10, 2, 0.4, 0.5, 1), BadParams);
  CHECK_THROWS_AS(gen_alpha_beta(10, 3, 0.0, 0.5, 1), BadParams);
  CHECK_THROWS_AS(gen_alpha_beta(10, 3, 1.0, 0.5, 1), BadParams);
  CHECK_THROWS_AS(gen_alpha_beta(10, 3, 0.4, 0.0, 1), BadParams);
  CHECK_THROWS_AS(gen_alpha_beta(10, 3, 0.4, 1.0, 1), BadParams);
}

TEST_CASE("gen_alpha_beta's mixture parameter shifts the demand mass") {
  // With beta = 0.9 most non-dominant draws are <= 0.9; with beta = 0.1 most
  // are > 0.1. Check the realized means are ordered, not exact quantiles.
  const Instance low = gen_alpha_beta(400, 3, 0.5, 0.1, 5);
  const Instance high = gen_alpha_beta(400, 3, 0.5, 0.9, 5);
  const auto beta_of = [](const Instance& inst) { return partition(inst).beta; };
  CHECK(beta_of(low) < beta_of(high));
}

// ---------------------------------------------------------------------------
// Adversarial families
// ---------------------------------------------------------------------------

TEST_CASE("adv_drf emits the documented rows exactly") {
  const int n = 8;
  const Instance inst = adv_drf(n, 0.25);  // n2 = 2, n1 = 6
  REQUIRE(inst.n() == n);
  const double e = 1.0 / n;
  for (int i = 0; i < 6; ++i) {
    CHECK(inst.demands[i][0] == 1.0);
    CHECK(inst.demands[i][1] == e);
  }
  CHECK(inst.demands[6][0] == e / 2);
  CHECK(inst.demands[6][1] == 1.0);
  CHECK(inst.demands[7][0] == 1.0 - e);
  CHECK(inst.demands[7][1] == 1.0);
}

TEST_CASE("adv_f1 emits the documented rows exactly") {
  const int n = 10;
  const Instance inst = adv_f1(n, 0.3);  // n2 = 3, n1 = 7
  const double e = 1.0 / n;
  CHECK(inst.demands[0][0] == 1.0);
  CHECK(inst.demands[0][1] == e);
  for (int i = 1; i < 7; ++i) {
    CHECK(inst.demands[i][0] == 1.0);
    CHECK(inst.demands[i][1] == 1.0 - e);
  }
  for (int i = 7; i < 10; ++i) {
    CHECK(inst.demands[i][0] == e);
    CHECK(inst.demands[i][1] == 1.0);
  }
}

TEST_CASE("adv_f2 emits the documented rows exactly") {
  const int n = 8;
  const Instance inst = adv_f2(n, 0.25);  // n2 = 2, n1 = 6
  const double e = 1.0 / (n * n);
  for (int i = 0; i < 6; ++i) {
    CHECK(inst.demands[i][0] == 1.0);
    CHECK(inst.demands[i][1] == e);
  }
  CHECK(inst.demands[6][0] == 1.0 / 6);
  CHECK(inst.demands[6][1] == 1.0);
  CHECK(inst.demands[7][0] == 1.0 - e);
  CHECK(inst.demands[7][1] == 1.0);
}

TEST_CASE("adversarial families enforce their size floors") {
  CHECK_THROWS_AS(adv_drf(4, 0.25), TooSmall);   // n2 = 1 < 2
  CHECK_THROWS_AS(adv_f1(3, 0.9), TooSmall);     // n1 = 0 after rounding? alpha > 1 band
  CHECK_THROWS_AS(adv_f2(2, 0.5), TooSmall);     // n1 = 1 < 2
}

TEST_CASE("the adversarial ratios improve (or hold) as n grows") {
  // Each family approaches its worst-case bound from below as n grows; at
  // the very least the ratio at n = 2000 must not fall behind n = 200.
  struct Family {
    const char* name;
    Instance (*make)(int, double);
    MechanismResult (*mech)(const Instance&);
    double alpha;
    bool use_util;
  };
  const Family families[] = {
      {"adv_drf/sw", adv_drf, drf, 0.25, false},
      {"adv_drf/util", adv_drf, drf, 0.25, true},
      {"adv_f1/sw", adv_f1, f1, 0.3, false},
      {"adv_f1/util", adv_f1, f1, 0.3, true},
      {"adv_f2/sw", adv_f2, f2, 0.25, false},
      {"adv_f2/util", adv_f2, f2, 0.25, true},
  };
  for (const auto& fam : families) {
    CAPTURE(fam.name);
    const auto ratio_at = [&](int n) {
      const Instance inst = fam.make(n, fam.alpha);
      const RatioPair rp = fair_ratio(fam.mech(inst), fair_benchmark(inst));
      return fam.use_util ? rp.util_ratio : rp.sw_ratio;
    };
    CHECK(ratio_at(2000) >= ratio_at(200) - 1e-3);
  }
}

TEST_CASE("adv_thm6 case 1 realizes the requested beta exactly") {
  const Instance inst = adv_thm6_case1(900, 3, 0.5, 0.1);
  const auto part = partition(inst);
  CHECK(part.alpha == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(part.beta_defined);
  CHECK(part.beta == doctest::Approx(0.1).epsilon(1e-9));
  // documented shape: right after the n1 group-1 rows sits the scout row
  // with resource-1 demand e^2 (e = 1/n^2)
  const double e = 1.0 / (900.0 * 900.0);
  CHECK(inst.demands[450][0] == e * e);
  CHECK(inst.demands[450][1] == 1.0);
}

TEST_CASE("adv_thm6 case 2 realizes the requested beta exactly and checks divisibility") {
  const Instance inst = adv_thm6_case2(900, 3, 0.3, 0.8);
  const auto part = partition(inst);
  CHECK(part.alpha == doctest::Approx(0.3).epsilon(1e-12));
  REQUIRE(part.beta_defined);
  CHECK(part.beta == doctest::Approx(0.8).epsilon(1e-9));
  // n2 = 271 would not divide by m - 1 = 2:
  CHECK_THROWS_AS(adv_thm6_case2(903, 3, 0.3, 0.8), BadParams);
}

TEST_CASE("adv_thm6 rejects out-of-range solved demands") {
  // A beta too large for the construction pushes the auxiliary demand past 1.
  CHECK_THROWS_AS(adv_thm6_case1(20, 3, 0.5, 0.999), BadParams);
  CHECK_THROWS_AS(adv_thm6_case1(10, 3, 0.2, 0.5), BadParams);  // n2 < m
}

// ---------------------------------------------------------------------------
// Trace ingestion
// ---------------------------------------------------------------------------

TEST_CASE("ingest_trace parses, normalizes, skips, and samples deterministically") {
  const std::string path = temp_file("trace_ok.csv");
  write_file(path,
             "cpu,mem\n"
             "4,2\n"
             "1,8\n"
             "0,3\n"      // skipped: non-positive
             "-1,2\n"     // skipped: non-positive
             "inf,2\n"    // skipped: non-finite
             "2,2\n");
  const IngestResult res = ingest_trace(path, 10, 77);
  CHECK(res.pool_size == 3);
  CHECK(res.skipped_rows == 3);
  REQUIRE(res.instance.n() == 10);
  for (const auto& row : res.instance.demands) {
    const double mx = std::max(row[0], row[1]);
    CHECK(mx == 1.0);
    // every sampled row is one of the three normalized pool rows
    const bool known = (row[0] == 1.0 && row[1] == 0.5) ||
                       (row[0] == 0.125 && row[1] == 1.0) ||
                       (row[0] == 1.0 && row[1] == 1.0);
    CHECK(known);
  }
  const IngestResult res2 = ingest_trace(path, 10, 77);
  CHECK(res.instance.demands == res2.instance.demands);
  std::remove(path.c_str());
}

TEST_CASE("ingest_trace enforces the exact header") {
  const std::string path = temp_file("trace_hdr.csv");
  write_file(path, "cpu,ram\n1,1\n");
  CHECK_THROWS_AS(ingest_trace(path, 2, 0), IoError);
  write_file(path, "cpu,mem\r\n1,1\n");  // CRLF is fine
  CHECK(ingest_trace(path, 2, 0).pool_size == 1);
  std::remove(path.c_str());
}

TEST_CASE("ingest_trace raises IoError with the line number on parse failures") {
  const std::string path = temp_file("trace_bad.csv");
  write_file(path, "cpu,mem\n1,2\nabc,3\n");
  CHECK_THROWS_WITH_AS(ingest_trace(path, 2, 0), doctest::Contains(":3"), IoError);
  write_file(path, "cpu,mem\n1\n");
  CHECK_THROWS_AS(ingest_trace(path, 2, 0), IoError);
  CHECK_THROWS_AS(ingest_trace(temp_file("missing_file.csv"), 2, 0), IoError);
  std::remove(path.c_str());
}

TEST_CASE("ingest_trace reports an empty pool") {
  const std::string path = temp_file("trace_empty.csv");
  write_file(path, "cpu,mem\n0,1\n-2,5\n");
  CHECK_THROWS_AS(ingest_trace(path, 2, 0), EmptyPool);
  write_file(path, "cpu,mem\n");
  CHECK_THROWS_AS(ingest_trace(path, 2, 0), EmptyPool);
  std::remove(path.c_str());
}

TEST_CASE("generate dispatches every kind to the matching generator") {
  GeneratorSpec spec;
  spec.n = 12;
  spec.alpha = 0.25;
  spec.seed = 9;

  spec.kind = GeneratorKind::AlphaRandom;
  CHECK(generate(spec).demands == gen_alpha(12, 0.25, 9).demands);

  spec.kind = GeneratorKind::AdvDrf;
  CHECK(generate(spec).demands == adv_drf(12, 0.25).demands);
  spec.kind = GeneratorKind::AdvF1;
  CHECK(generate(spec).demands == adv_f1(12, 0.25).demands);
  spec.kind = GeneratorKind::AdvF2;
  CHECK(generate(spec).demands == adv_f2(12, 0.25).demands);

  spec.kind = GeneratorKind::AlphaBetaRandom;
  spec.m = 3;
  spec.beta = 0.4;
  CHECK(generate(spec).demands == gen_alpha_beta(12, 3, 0.25, 0.4, 9).demands);

  spec.kind = GeneratorKind::AdvThm6Case2;
  spec.n = 20;
  spec.alpha = 0.5;  // n2 = 10, divisible by m - 1 = 2
  CHECK(generate(spec).demands == adv_thm6_case2(20, 3, 0.5, 0.4).demands);
}
