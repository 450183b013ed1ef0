// Seeded instance generators: two synthetic families with controlled group
// structure (alpha for m = 2; alpha and beta for m >= 3), the adversarial
// families that realize the mechanisms' worst-case ratios, and CSV trace
// ingestion for replaying recorded task demands.
//
// All generators are pure functions of their parameters plus a 64-bit seed
// (SplitMix64 underneath); the adversarial families take no randomness at all.
// Every generator returns a normalized Instance, and the group sizes implied
// by alpha are hit exactly after round-half-up rounding.
#pragma once

#include <cstdint>
#include <string>

#include "fairalloc/core.hpp"

namespace fairalloc {

struct BadAlpha : InputError {
  using InputError::InputError;
};
struct BadParams : InputError {
  using InputError::InputError;
};
struct TooSmall : InputError {
  using InputError::InputError;
};
struct IoError : InputError {
  using InputError::InputError;
};
struct EmptyPool : InputError {
  using InputError::InputError;
};

// n * alpha use round-half-up everywhere a group size is derived.
int round_half_up(double x);

// m = 2. n(1-alpha) agents dominant on resource 1, the rest on resource 2;
// the non-dominant entry of each row is uniform on the centesimal grid
// {0.01, ..., 1.00} for resource-1 agents and {0.01, ..., 0.99} for
// resource-2 agents (a 1.00 draw there would tie the row and silently move
// the agent across groups). Requires 0 < alpha <= 1/2 and both groups
// nonempty after rounding; throws BadAlpha otherwise.
Instance gen_alpha(int n, double alpha, std::uint64_t seed);

// m >= 3. n(1-alpha) agents dominant on resource 1; each remaining agent's
// dominant resource is uniform on {2, ..., m}. Non-dominant entries are drawn
// from the beta-controlled mixture: with probability 1-beta uniform on the
// grid points <= beta, otherwise uniform on the grid points > beta (if one
// side of the split is empty the other is used). Resource-1 draws for agents
// outside group 1 avoid 1.00 for the same tie reason as above. Requires
// m >= 3, alpha and beta in (0,1), both groups nonempty; throws BadParams.
Instance gen_alpha_beta(int n, int m, double alpha, double beta, std::uint64_t seed);

// Adversarial families (m = 2, deterministic). Each realizes the matching
// mechanism's worst-case ratio as n grows; eps scales as noted.
//
// adv_drf: eps = 1/n. Group 1: n(1-alpha) rows (1, eps); group 2: one row
//          (eps/2, 1) plus n*alpha - 1 rows (1-eps, 1). Needs n*alpha >= 2
//          and a nonempty group 1 (TooSmall).
Instance adv_drf(int n, double alpha);

// adv_f1: eps = 1/n. Group 1: one row (1, eps) plus n(1-alpha) - 1 rows
//         (1, 1-eps); group 2: n*alpha rows (eps, 1). Needs n(1-alpha) >= 2
//         and n*alpha >= 1 (TooSmall).
Instance adv_f1(int n, double alpha);

// adv_f2: eps = 1/n^2. Group 1: n(1-alpha) rows (1, eps); group 2: one row
//         (1/(n(1-alpha)), 1) plus n*alpha - 1 rows (1-eps, 1). Needs
//         n(1-alpha) >= 2 and n*alpha >= 1 (TooSmall).
Instance adv_f2(int n, double alpha);

// Adversarial families for m >= 3, parameterized by the target beta. Both
// solve an auxiliary demand value bp from the requested beta so that the
// realized beta of the emitted instance equals the request exactly;
// BadParams when bp falls outside (0,1] or a size constraint fails.
//
// Case 1 (eps = 1/n^2): group 1 holds one row (1, eps, ..., eps) and
// n1 - 1 rows (1, 1-eps, eps, ..., eps); outside agents are one row
// (eps^2, 1, eps, ..., eps), m-2 rows dominant on resources 3..m with eps
// elsewhere, and n2 - m + 1 rows (bp, 1, eps, ..., eps).
Instance adv_thm6_case1(int n, int m, double alpha, double beta);

// Case 2 (eps = 1/n): group 1 holds n1 copies of (1, eps, ..., eps); the n2
// outside agents split evenly over resources 2..m (so m-1 must divide n2),
// each subgroup holding one special row with resource-1 demand bp/sqrt(n)
// and eps^2 elsewhere, plus regulars with resource-1 demand bp and eps
// elsewhere.
Instance adv_thm6_case2(int n, int m, double alpha, double beta);

// Trace ingestion. The file must start with the exact header "cpu,mem";
// every following line holds two positive finite floats. Rows that parse but
// fail positivity/finiteness are skipped and counted; rows that do not parse
// raise IoError with the line number. The surviving rows are normalized and
// pooled, and the instance samples n pool rows uniformly with replacement.
struct IngestResult {
  Instance instance;
  int skipped_rows = 0;
  int pool_size = 0;
};

IngestResult ingest_trace(const std::string& path, int n, std::uint64_t seed);

// Uniform dispatch used by the CLI and the sweep harness.
enum class GeneratorKind {
  AlphaRandom,
  AlphaBetaRandom,
  AdvDrf,
  AdvF1,
  AdvF2,
  AdvThm6Case1,
  AdvThm6Case2,
  Trace,
};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::AlphaRandom;
  int n = 0;
  int m = 2;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  std::string trace_path;
};

Instance generate(const GeneratorSpec& spec);

}  // namespace fairalloc
