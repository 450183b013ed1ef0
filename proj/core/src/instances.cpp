#include "fairalloc/instances.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fairalloc/rng.hpp"

namespace fairalloc {

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

namespace {

double grid(std::uint64_t j) { return static_cast<double>(j) / 100.0; }

// One draw from the beta mixture over the centesimal grid: with probability
// 1-beta uniform over {0.01,...,jcut}, otherwise over {jcut+1,...,jtop}.
// jtop is 99 for coordinates where a 1.00 draw would be ambiguous.
double chi_draw(SplitMix64& rng, double beta, std::uint64_t jtop) {
  const auto jcut = static_cast<std::uint64_t>(std::floor(beta * 100.0 + 1e-9));
  const bool low_empty = jcut < 1;
  const bool high_empty = jcut >= jtop;
  bool low = rng.next_unit() < 1.0 - beta;
  if (low && low_empty) low = false;
  if (!low && high_empty) low = true;
  return low ? grid(rng.next_in(1, jcut)) : grid(rng.next_in(jcut + 1, jtop));
}

}  // namespace

Instance gen_alpha(int n, double alpha, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw BadAlpha("alpha must lie in (0, 1/2]");
  const int n2 = round_half_up(n * alpha);
  const int n1 = n - n2;
  if (n2 < 1 || n1 < 1)
    throw BadAlpha("alpha = " + std::to_string(alpha) + " leaves an empty group at n = " +
                   std::to_string(n));
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> raw;
  raw.reserve(n);
  for (int i = 0; i < n1; ++i) raw.push_back({1.0, grid(rng.next_in(1, 100))});
  for (int i = 0; i < n2; ++i) raw.push_back({grid(rng.next_in(1, 99)), 1.0});
  return normalize(raw);
}

Instance gen_alpha_beta(int n, int m, double alpha, double beta, std::uint64_t seed) {
  if (m < 3) throw BadParams("this family needs at least three resources");
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
    throw BadParams("alpha and beta must lie strictly inside (0, 1)");
  const int n2 = round_half_up(n * alpha);
  const int n1 = n - n2;
  if (n2 < 1 || n1 < 1)
    throw BadParams("alpha = " + std::to_string(alpha) + " leaves an empty group at n = " +
                    std::to_string(n));
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> raw;
  raw.reserve(n);
  for (int i = 0; i < n; ++i) {
    const bool special = i < n1;
    const int dom = special ? 0 : static_cast<int>(rng.next_in(2, m)) - 1;
    std::vector<double> row(m);
    for (int r = 0; r < m; ++r) {
      if (r == dom) {
        row[r] = 1.0;
        continue;
      }
      // A 1.00 draw on resource 1 for an outside agent would move it into
      // group 1; cap that coordinate at 0.99.
      const std::uint64_t jtop = (!special && r == 0) ? 99 : 100;
      row[r] = chi_draw(rng, beta, jtop);
    }
    raw.push_back(std::move(row));
  }
  return normalize(raw);
}

Instance adv_drf(int n, double alpha) {
  const int n2 = round_half_up(n * alpha);
  const int n1 = n - n2;
  if (n2 < 2) throw TooSmall("this family needs n * alpha >= 2");
  if (n1 < 1) throw TooSmall("this family needs a nonempty resource-1 group");
  const double e = 1.0 / n;
  std::vector<std::vector<double>> raw;
  raw.reserve(n);
  for (int i = 0; i < n1; ++i) raw.push_back({1.0, e});
  raw.push_back({e / 2.0, 1.0});
  for (int i = 0; i < n2 - 1; ++i) raw.push_back({1.0 - e, 1.0});
  return normalize(raw);
}

Instance adv_f1(int n, double alpha) {
  const int n2 = round_half_up(n * alpha);
  const int n1 = n - n2;
  if (n1 < 2) throw TooSmall("this family needs n * (1 - alpha) >= 2");
  if (n2 < 1) throw TooSmall("this family needs a nonempty resource-2 group");
  const double e = 1.0 / n;
  std::vector<std::vector<double>> raw;
  raw.reserve(n);
  raw.push_back({1.0, e});
  for (int i = 0; i < n1 - 1; ++i) raw.push_back({1.0, 1.0 - e});
  for (int i = 0; i < n2; ++i) raw.push_back({e, 1.0});
  return normalize(raw);
}

Instance adv_f2(int n, double alpha) {
  const int n2 = round_half_up(n * alpha);
  const int n1 = n - n2;
  if (n1 < 2) throw TooSmall("this family needs n * (1 - alpha) >= 2");
  if (n2 < 1) throw TooSmall("this family needs a nonempty resource-2 group");
  const double e = 1.0 / (static_cast<double>(n) * n);
  std::vector<std::vector<double>> raw;
  raw.reserve(n);
  for (int i = 0; i < n1; ++i) raw.push_back({1.0, e});
  raw.push_back({1.0 / n1, 1.0});
  for (int i = 0; i < n2 - 1; ++i) raw.push_back({1.0 - e, 1.0});
  return normalize(raw);
}

Instance adv_thm6_case1(int n, int m, double alpha, double beta) {
  if (m < 3) throw BadParams("this family needs at least three resources");
  const int n2 = round_half_up(n * alpha);
  const int n1 = n - n2;
  if (n1 < 1) throw BadParams("alpha leaves the resource-1 group empty");
  if (n2 < m) throw BadParams("needs n * alpha >= m to seat the construction");
  const double e = 1.0 / (static_cast<double>(n) * n);
  // bp solves: eps^2 + (m-2) eps + (n2-m+1) bp = n2 * beta, making the
  // realized beta of the emitted instance equal the request exactly.
  const double bp = (n2 * beta - e * e - (m - 2) * e) / (n2 - m + 1);
  if (!(bp > 0.0 && bp <= 1.0))
    throw BadParams("requested beta is unreachable for these sizes (auxiliary demand " +
                    std::to_string(bp) + " outside (0,1])");
  std::vector<std::vector<double>> raw;
  raw.reserve(n);
  {
    std::vector<double> row(m, e);
    row[0] = 1.0;
    raw.push_back(row);
  }
  for (int i = 0; i < n1 - 1; ++i) {
    std::vector<double> row(m, e);
    row[0] = 1.0;
    row[1] = 1.0 - e;
    raw.push_back(row);
  }
  {
    std::vector<double> row(m, e);
    row[0] = e * e;
    row[1] = 1.0;
    raw.push_back(row);
  }
  for (int r = 2; r < m; ++r) {
    std::vector<double> row(m, e);
    row[r] = 1.0;
    raw.push_back(row);
  }
  for (int i = 0; i < n2 - m + 1; ++i) {
    std::vector<double> row(m, e);
    row[0] = bp;
    row[1] = 1.0;
    raw.push_back(row);
  }
  return normalize(raw);
}

Instance adv_thm6_case2(int n, int m, double alpha, double beta) {
  if (m < 3) throw BadParams("this family needs at least three resources");
  const int n2 = round_half_up(n * alpha);
  const int n1 = n - n2;
  if (n1 < 1) throw BadParams("alpha leaves the resource-1 group empty");
  if (n2 < m - 1 || n2 % (m - 1) != 0)
    throw BadParams("n * alpha must be a positive multiple of m - 1");
  const double e = 1.0 / n;
  const double rootn = std::sqrt(static_cast<double>(n));
  // bp solves: (m-1) bp/sqrt(n) + (n2-(m-1)) bp = n2 * beta.
  const double bp = beta * n2 / ((m - 1) / rootn + n2 - (m - 1));
  if (!(bp > 0.0 && bp <= 1.0))
    throw BadParams("requested beta is unreachable for these sizes (auxiliary demand " +
                    std::to_string(bp) + " outside (0,1])");
  std::vector<std::vector<double>> raw;
  raw.reserve(n);
  for (int i = 0; i < n1; ++i) {
    std::vector<double> row(m, e);
    row[0] = 1.0;
    raw.push_back(row);
  }
  const int per_group = n2 / (m - 1);
  for (int r = 1; r < m; ++r) {
    {
      std::vector<double> row(m, e * e);
      row[0] = bp / rootn;
      row[r] = 1.0;
      raw.push_back(row);
    }
    for (int i = 0; i < per_group - 1; ++i) {
      std::vector<double> row(m, e);
      row[0] = bp;
      row[r] = 1.0;
      raw.push_back(row);
    }
  }
  return normalize(raw);
}

IngestResult ingest_trace(const std::string& path, int n, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "cpu,mem")
    throw IoError(path + ": expected header 'cpu,mem', got '" + line + "'");

  IngestResult out;
  std::vector<std::vector<double>> pool;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw IoError(path + ":" + std::to_string(lineno) + ": expected 'cpu,mem' pair");
    double cpu = 0.0, mem = 0.0;
    try {
      std::size_t used = 0;
      cpu = std::stod(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("trailing junk");
      const std::string rest = line.substr(comma + 1);
      mem = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw IoError(path + ":" + std::to_string(lineno) + ": cannot parse '" + line + "'");
    }
    if (!std::isfinite(cpu) || !std::isfinite(mem) || cpu <= 0.0 || mem <= 0.0) {
      ++out.skipped_rows;
      continue;
    }
    const double mx = std::max(cpu, mem);
    pool.push_back({cpu == mx ? 1.0 : cpu / mx, mem == mx ? 1.0 : mem / mx});
  }
  if (pool.empty()) throw EmptyPool(path + ": no usable rows");
  out.pool_size = static_cast<int>(pool.size());
  if (n < 1) throw InputError("sample size must be at least 1");

  SplitMix64 rng(seed);
  std::vector<std::vector<double>> raw;
  raw.reserve(n);
  for (int i = 0; i < n; ++i)
    raw.push_back(pool[rng.next_in(0, static_cast<std::uint64_t>(pool.size()) - 1)]);
  out.instance = normalize(raw);
  return out;
}

Instance generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::AlphaRandom:
      return gen_alpha(spec.n, spec.alpha, spec.seed);
    case GeneratorKind::AlphaBetaRandom:
      return gen_alpha_beta(spec.n, spec.m, spec.alpha, spec.beta, spec.seed);
    case GeneratorKind::AdvDrf:
      return adv_drf(spec.n, spec.alpha);
    case GeneratorKind::AdvF1:
      return adv_f1(spec.n, spec.alpha);
    case GeneratorKind::AdvF2:
      return adv_f2(spec.n, spec.alpha);
    case GeneratorKind::AdvThm6Case1:
      return adv_thm6_case1(spec.n, spec.m, spec.alpha, spec.beta);
    case GeneratorKind::AdvThm6Case2:
      return adv_thm6_case2(spec.n, spec.m, spec.alpha, spec.beta);
    case GeneratorKind::Trace:
      return ingest_trace(spec.trace_path, spec.n, spec.seed).instance;
  }
  throw InputError("unknown generator kind");
}

}  // namespace fairalloc
