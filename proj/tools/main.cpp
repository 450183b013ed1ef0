// fairalloc command line tool.
//
//   solve   run one mechanism on an instance file, print the allocation
//   verify  run the property checks (and optionally the manipulation probe)
//   sweep   run a seeded experiment sweep from a config file, emit CSV
//   gen     generate an instance file
//
// Exit codes: 0 ok; 1 property violation or internal check failure;
// 2 unreadable/ill-formed input; 3 operation outside its domain.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairalloc/core.hpp"
#include "fairalloc/fairopt.hpp"
#include "fairalloc/instances.hpp"
#include "fairalloc/io.hpp"
#include "fairalloc/mechanisms.hpp"
#include "fairalloc/properties.hpp"
#include "fairalloc/rng.hpp"

namespace fa = fairalloc;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Mechanism dispatch
// ---------------------------------------------------------------------------

const std::vector<std::string> kTags = {"drf", "f1",        "f2",         "f2star",
                                        "fg",  "gf1",       "hybrid-sw",  "hybrid-util"};

bool known_tag(const std::string& tag) {
  return std::find(kTags.begin(), kTags.end(), tag) != kTags.end();
}

fa::ScoreFunction parse_score(const std::string& spec, int m) {
  if (spec == "dom") return fa::score_dominant();
  if (spec == "sum") return fa::score_sum();
  if (spec == "sum+prod") return fa::score_sum_product();
  if (spec.size() >= 2 && spec[0] == 'v') {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(spec.substr(1), &used);
      if (used + 1 != spec.size()) k = 0;
    } catch (const std::exception&) {
      k = 0;
    }
    if (k >= 1 && k <= m) return fa::score_coordinate(k - 1);
    throw fa::InputError("score coordinate out of range in --g '" + spec + "' (m = " +
                         std::to_string(m) + ")");
  }
  throw fa::InputError("unknown score spec '" + spec + "' (want v<k>, dom, sum, or sum+prod)");
}

// The two-resource mechanisms assume the larger group sits on resource 1;
// relabel on the way in and swap the allocation back on the way out so
// callers always see the input column order.
fa::MechanismResult run_mechanism(const fa::Instance& inst, const std::string& tag,
                                  const std::string& gspec, int special) {
  if (!known_tag(tag)) throw fa::InputError("unknown mechanism tag '" + tag + "'");
  if (tag == "drf") return fa::drf(inst);
  if (tag == "fg") {
    if (gspec.empty()) throw fa::InputError("mechanism 'fg' needs --g / g= score spec");
    return fa::f_g(inst, parse_score(gspec, inst.m()));
  }
  if (tag == "gf1") return fa::generalized_f1(inst, special > 0 ? special - 1 : -1);

  const auto [oriented, swapped] = fa::relabel_major_first(inst);
  fa::MechanismResult res;
  if (tag == "f1")
    res = fa::f1(oriented);
  else if (tag == "f2")
    res = fa::f2(oriented);
  else if (tag == "f2star")
    res = fa::f2star(oriented);
  else if (tag == "hybrid-sw")
    res = fa::hybrid_sw(oriented);
  else
    res = fa::hybrid_util(oriented);
  if (swapped) {
    res.allocation = fa::swap_allocation_columns(res.allocation, 0, 1);
    for (int& r : res.exhausted) r = 1 - r;
    std::sort(res.exhausted.begin(), res.exhausted.end());
  }
  return res;
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

int cmd_solve(const std::string& path, const std::string& tag, const std::string& gspec,
              int special, bool as_json) {
  const fa::Instance inst = fa::load_instance_file(path);
  const fa::MechanismResult res = run_mechanism(inst, tag, gspec, special);
  const double sw = fa::social_welfare(res.allocation, inst);
  const double util = fa::utilization(res.allocation);

  if (as_json) {
    json out;
    out["mechanism"] = tag;
    if (!res.dispatched.empty()) out["dispatched"] = res.dispatched;
    out["n"] = inst.n();
    out["m"] = inst.m();
    out["shares"] = res.allocation.shares;
    out["allocation"] = res.allocation.rows;
    out["social_welfare"] = sw;
    out["utilization"] = util;
    json ex = json::array();
    for (int r : res.exhausted) ex.push_back(r + 1);  // 1-based, matching r1..rm headers
    out["exhausted"] = ex;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  std::cout << "mechanism: " << tag;
  if (!res.dispatched.empty()) std::cout << " (dispatched " << res.dispatched << ")";
  std::cout << "\nagents: " << inst.n() << "  resources: " << inst.m() << "\n";
  std::cout << "allocation (rows; trailing column = dominant share):\n";
  for (int i = 0; i < inst.n(); ++i) {
    std::cout << " ";
    for (double v : res.allocation.rows[i]) std::cout << " " << fa::format_double(v);
    std::cout << "  | " << fa::format_double(res.allocation.shares[i]) << "\n";
  }
  std::cout << "social welfare: " << fa::format_double(sw) << "\n";
  std::cout << "utilization: " << fa::format_double(util) << "\n";
  std::cout << "exhausted:";
  if (res.exhausted.empty()) std::cout << " none";
  for (int r : res.exhausted) std::cout << " r" << (r + 1);
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

int cmd_verify(const std::string& path, const std::string& tag, const std::string& gspec,
               int special, int sp_grid_k) {
  const fa::Instance inst = fa::load_instance_file(path);
  const fa::MechanismResult res = run_mechanism(inst, tag, gspec, special);
  const fa::PropertyReport rep = fa::check_all(res.allocation, inst);

  std::cout << "si: " << (rep.si.pass ? "pass" : "FAIL") << "\n";
  if (!rep.si.pass)
    std::cout << "  agent " << rep.si.worst_agent + 1 << " short by "
              << fa::format_double(rep.si.shortfall) << "\n";
  std::cout << "ef: " << (rep.ef.pass ? "pass" : "FAIL") << "\n";
  for (const auto& v : rep.ef.violations)
    std::cout << "  agent " << v.envious + 1 << " envies agent " << v.envied + 1 << " by "
              << fa::format_double(v.magnitude) << "\n";
  std::cout << "po: " << (rep.po.pass ? "pass" : "FAIL") << " (max column sum "
            << fa::format_double(rep.po.max_column_sum) << ")\n";
  std::cout << "non-wasteful: " << (rep.non_wasteful.pass ? "pass" : "FAIL") << "\n";

  bool found = false;
  if (sp_grid_k > 0) {
    const auto grid = fa::sp_grid(inst.m(), sp_grid_k);
    auto fn = [&](const fa::Instance& I) { return run_mechanism(I, tag, gspec, special); };
    for (int agent = 0; agent < inst.n(); ++agent) {
      const auto finding = fa::sp_probe(fn, inst, agent, grid);
      if (finding) {
        found = true;
        std::cout << "sp-probe: agent " << agent + 1 << " gains "
                  << fa::format_double(finding->gain) << " by reporting";
        for (double v : finding->false_demand) std::cout << " " << fa::format_double(v);
        std::cout << " (utility " << fa::format_double(finding->truthful_utility) << " -> "
                  << fa::format_double(finding->manipulated_utility) << ")\n";
      }
    }
    if (!found) std::cout << "sp-probe: no gainful misreport on the " << sp_grid_k
                          << "-point grid\n";
  }

  const bool ok = rep.all_pass() && !found;
  std::cout << (ok ? "RESULT: pass" : "RESULT: FAIL") << "\n";
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

fa::GeneratorKind parse_kind(const std::string& kind) {
  if (kind == "alpha") return fa::GeneratorKind::AlphaRandom;
  if (kind == "alpha-beta") return fa::GeneratorKind::AlphaBetaRandom;
  if (kind == "adv-drf") return fa::GeneratorKind::AdvDrf;
  if (kind == "adv-f1") return fa::GeneratorKind::AdvF1;
  if (kind == "adv-f2") return fa::GeneratorKind::AdvF2;
  if (kind == "adv-thm6-case1") return fa::GeneratorKind::AdvThm6Case1;
  if (kind == "adv-thm6-case2") return fa::GeneratorKind::AdvThm6Case2;
  if (kind == "trace") return fa::GeneratorKind::Trace;
  throw fa::InputError("unknown generator kind '" + kind + "'");
}

int cmd_gen(const fa::GeneratorSpec& spec, const std::string& out_path) {
  const fa::Instance inst = fa::generate(spec);
  fa::save_instance_file(out_path, inst);
  const fa::GroupPartition part = fa::partition(inst);
  std::cout << "wrote " << out_path << ": n=" << inst.n() << " m=" << inst.m() << "\n";
  std::cout << "realized alpha=" << fa::format_double(part.alpha);
  if (inst.m() >= 3 && part.beta_defined)
    std::cout << " beta=" << fa::format_double(part.beta);
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepConfig {
  std::string generator;
  int n = 0;
  int m = 2;
  std::vector<double> alphas;  // may hold a single NaN for "unset"
  std::vector<double> betas;
  int trials = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> mechanisms;
  std::string gspec;
  int special = 0;
  std::string trace_path;
  std::string out;  // empty -> stdout
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_num(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("junk");
    return v;
  } catch (const std::exception&) {
    throw fa::InputError("config: cannot parse number '" + s + "' for key " + key);
  }
}

// "0.05:0.5:0.05" (inclusive range), "0.1,0.2,0.4", or a single value.
std::vector<double> parse_grid(const std::string& raw, const std::string& key) {
  if (raw.find(':') != std::string::npos) {
    const auto parts = split(raw, ':');
    if (parts.size() != 3) throw fa::InputError("config: want start:stop:step for key " + key);
    const double a = parse_num(parts[0], key);
    const double b = parse_num(parts[1], key);
    const double st = parse_num(parts[2], key);
    if (!(st > 0.0)) throw fa::InputError("config: step must be positive for key " + key);
    const auto count = static_cast<long>(std::llround((b - a) / st));
    if (count < 0 || count > 10000)
      throw fa::InputError("config: bad range for key " + key);
    std::vector<double> vals;
    for (long k = 0; k <= count; ++k) vals.push_back(a + k * st);
    return vals;
  }
  std::vector<double> vals;
  for (const auto& part : split(raw, ','))
    if (!trim(part).empty()) vals.push_back(parse_num(trim(part), key));
  if (vals.empty()) throw fa::InputError("config: empty value for key " + key);
  return vals;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fa::InputError("cannot open config file: " + path);
  SweepConfig cfg;
  const double unset = std::numeric_limits<double>::quiet_NaN();
  cfg.alphas = {unset};
  cfg.betas = {unset};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw fa::InputError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string val = trim(stripped.substr(eq + 1));
    if (key == "generator")
      cfg.generator = val;
    else if (key == "n")
      cfg.n = static_cast<int>(parse_num(val, key));
    else if (key == "m")
      cfg.m = static_cast<int>(parse_num(val, key));
    else if (key == "alpha")
      cfg.alphas = parse_grid(val, key);
    else if (key == "beta")
      cfg.betas = parse_grid(val, key);
    else if (key == "trials")
      cfg.trials = static_cast<int>(parse_num(val, key));
    else if (key == "seed")
      cfg.seed = static_cast<std::uint64_t>(parse_num(val, key));
    else if (key == "mechanisms") {
      for (const auto& part : split(val, ','))
        if (!trim(part).empty()) cfg.mechanisms.push_back(trim(part));
    } else if (key == "g")
      cfg.gspec = val;
    else if (key == "special")
      cfg.special = static_cast<int>(parse_num(val, key));
    else if (key == "trace_path")
      cfg.trace_path = val;
    else if (key == "out")
      cfg.out = val;
    else
      throw fa::InputError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  if (cfg.generator.empty()) throw fa::InputError("config: missing key 'generator'");
  if (cfg.n <= 0) throw fa::InputError("config: missing or non-positive key 'n'");
  if (cfg.trials <= 0) throw fa::InputError("config: non-positive key 'trials'");
  if (cfg.mechanisms.empty()) throw fa::InputError("config: missing key 'mechanisms'");
  for (const auto& tag : cfg.mechanisms)
    if (!known_tag(tag)) throw fa::InputError("config: unknown mechanism tag '" + tag + "'");
  return cfg;
}

std::string fmt_or_empty(double v) { return std::isnan(v) ? "" : fa::format_double(v); }

// Closed-form worst-case bounds for the sweep record; empty cells where no
// closed form applies. The hybrid guarantees are single-objective constants.
struct BoundCells {
  std::string sw, util;
};

BoundCells bound_cells(const std::string& tag, const fa::GroupPartition& part, int n, int m) {
  BoundCells cells;
  const double inf = std::numeric_limits<double>::infinity();
  if (tag == "hybrid-sw") {
    cells.sw = fa::format_double(3.0 - std::sqrt(3.0) + 1.0 / (2.0 * n));
    return cells;
  }
  if (tag == "hybrid-util") {
    cells.util = fa::format_double(3.0 / (2.0 - 1.0 / n));
    return cells;
  }
  fa::MechanismTag mt;
  if (tag == "drf")
    mt = fa::MechanismTag::Drf;
  else if (tag == "f1")
    mt = fa::MechanismTag::F1;
  else if (tag == "f2")
    mt = fa::MechanismTag::F2;
  else if (tag == "f2star")
    mt = fa::MechanismTag::F2Star;
  else if (tag == "gf1")
    mt = fa::MechanismTag::GeneralizedF1;
  else
    return cells;  // fg: no closed form
  try {
    const auto b = fa::theoretical_ratios(mt, part.alpha, part.beta, n, m);
    cells.sw = fa::format_double(b.sw_bound);
    cells.util = b.util_unbounded ? "inf" : fa::format_double(b.util_bound);
    (void)inf;
  } catch (const fa::OutOfDomain&) {
    // degenerate partition (e.g. alpha == 0): leave the cells empty
  }
  return cells;
}

int cmd_sweep(const std::string& config_path) {
  const SweepConfig cfg = load_sweep_config(config_path);
  const fa::GeneratorKind kind = parse_kind(cfg.generator);

  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw fa::InputError("cannot open output file: " + cfg.out);
  }
  std::ostream& os = cfg.out.empty() ? std::cout : file;

  // Header.
  os << "kind,point,trial,generator,n,m,alpha_req,beta_req,alpha,beta,seed,sw_opt,util_opt";
  for (const auto& tag : cfg.mechanisms)
    os << "," << tag << "_sw," << tag << "_util," << tag << "_sw_ratio," << tag << "_util_ratio,"
       << tag << "_sw_bound," << tag << "_util_bound," << tag << "_branch";
  os << "\n" << std::flush;

  const int nmech = static_cast<int>(cfg.mechanisms.size());
  std::uint64_t counter = 0;  // global trial counter: seed_t = stream_seed(seed, counter)
  int point = 0;
  for (double alpha_req : cfg.alphas) {
    for (double beta_req : cfg.betas) {
      // Per-point aggregates: mean and max over trials of every numeric cell.
      std::vector<double> sum_cells(2 + 4 * nmech, 0.0);
      std::vector<double> max_cells(2 + 4 * nmech, -std::numeric_limits<double>::infinity());
      double sum_alpha = 0.0, sum_beta = 0.0;
      int beta_count = 0;

      for (int trial = 0; trial < cfg.trials; ++trial) {
        fa::GeneratorSpec spec;
        spec.kind = kind;
        spec.n = cfg.n;
        spec.m = cfg.m;
        spec.alpha = std::isnan(alpha_req) ? 0.0 : alpha_req;
        spec.beta = std::isnan(beta_req) ? 0.0 : beta_req;
        spec.seed = fa::stream_seed(cfg.seed, counter);
        spec.trace_path = cfg.trace_path;
        const fa::Instance inst = fa::generate(spec);
        const fa::GroupPartition part = fa::partition(inst);
        const fa::FairBenchmark bench = fa::fair_benchmark(inst);

        os << "trial," << point << "," << trial << "," << cfg.generator << "," << inst.n() << ","
           << inst.m() << "," << fmt_or_empty(alpha_req) << "," << fmt_or_empty(beta_req) << ","
           << fa::format_double(part.alpha) << ","
           << (part.beta_defined ? fa::format_double(part.beta) : "") << "," << spec.seed << ","
           << fa::format_double(bench.sw_opt) << "," << fa::format_double(bench.util_opt);

        sum_alpha += part.alpha;
        if (part.beta_defined) {
          sum_beta += part.beta;
          ++beta_count;
        }
        sum_cells[0] += bench.sw_opt;
        sum_cells[1] += bench.util_opt;
        max_cells[0] = std::max(max_cells[0], bench.sw_opt);
        max_cells[1] = std::max(max_cells[1], bench.util_opt);

        for (int k = 0; k < nmech; ++k) {
          const auto& tag = cfg.mechanisms[k];
          const fa::MechanismResult res = run_mechanism(inst, tag, cfg.gspec, cfg.special);
          double sw = 0.0;
          for (double y : res.allocation.shares) sw += y;
          const double util = fa::utilization(res.allocation);
          const fa::RatioPair ratio = fa::fair_ratio(res, bench);
          if (ratio.sw_ratio < 1.0 - 1e-6 || ratio.util_ratio < 1.0 - 1e-6)
            throw fa::Error("sweep consistency: a mechanism beat the fair optimum (" + tag +
                            ", trial " + std::to_string(counter) + ")");
          const BoundCells bounds = bound_cells(tag, part, inst.n(), inst.m());
          os << "," << fa::format_double(sw) << "," << fa::format_double(util) << ","
             << fa::format_double(ratio.sw_ratio) << "," << fa::format_double(ratio.util_ratio)
             << "," << bounds.sw << "," << bounds.util << "," << res.dispatched;
          double* sums = &sum_cells[2 + 4 * k];
          double* maxs = &max_cells[2 + 4 * k];
          const double vals[4] = {sw, util, ratio.sw_ratio, ratio.util_ratio};
          for (int q = 0; q < 4; ++q) {
            sums[q] += vals[q];
            maxs[q] = std::max(maxs[q], vals[q]);
          }
        }
        os << "\n" << std::flush;
        ++counter;
      }

      // Aggregate rows for this parameter point.
      const double tn = cfg.trials;
      for (const char* agg : {"mean", "max"}) {
        const bool mean = std::string(agg) == "mean";
        os << agg << "," << point << ",," << cfg.generator << "," << cfg.n << "," << cfg.m << ","
           << fmt_or_empty(alpha_req) << "," << fmt_or_empty(beta_req) << ","
           << fa::format_double(sum_alpha / tn) << ","
           << (beta_count > 0 ? fa::format_double(sum_beta / beta_count) : "") << ",,"
           << fa::format_double(mean ? sum_cells[0] / tn : max_cells[0]) << ","
           << fa::format_double(mean ? sum_cells[1] / tn : max_cells[1]);
        for (int k = 0; k < nmech; ++k) {
          const double* sums = &sum_cells[2 + 4 * k];
          const double* maxs = &max_cells[2 + 4 * k];
          for (int q = 0; q < 4; ++q)
            os << (q == 0 ? "," : ",") << fa::format_double(mean ? sums[q] / tn : maxs[q]);
          os << ",,,";  // bound and branch cells have no aggregate
        }
        os << "\n" << std::flush;
      }
      ++point;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fair multi-resource allocation toolkit"};
  app.require_subcommand(1);

  std::string in_path, tag, gspec, out_path, config_path, kind, trace_path;
  int special = 0, sp_grid_k = 0, n = 0, m = 2;
  double alpha = 0.0, beta = 0.0;
  std::uint64_t seed = 0;
  bool as_json = false;

  auto* solve = app.add_subcommand("solve", "run a mechanism on an instance file");
  solve->add_option("-i,--instance", in_path, "instance CSV")->required();
  solve->add_option("-m,--mechanism", tag, "drf|f1|f2|f2star|fg|gf1|hybrid-sw|hybrid-util")
      ->required();
  solve->add_option("--g", gspec, "score spec for fg: v<k>|dom|sum|sum+prod");
  solve->add_option("--special", special, "gf1: 1-based special resource (default: largest group)");
  solve->add_flag("--json", as_json, "machine-readable output");

  auto* verify = app.add_subcommand("verify", "check SI/EF/PO/non-wastefulness (and probe SP)");
  verify->add_option("-i,--instance", in_path, "instance CSV")->required();
  verify->add_option("-m,--mechanism", tag, "mechanism tag")->required();
  verify->add_option("--g", gspec, "score spec for fg");
  verify->add_option("--special", special, "gf1: 1-based special resource");
  verify->add_option("--sp-grid", sp_grid_k, "probe misreports on a k-point-per-axis grid");

  auto* sweep = app.add_subcommand("sweep", "run an experiment sweep from a config file");
  sweep->add_option("-c,--config", config_path, "key=value config file")->required();

  auto* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("--kind", kind,
                  "alpha|alpha-beta|adv-drf|adv-f1|adv-f2|adv-thm6-case1|adv-thm6-case2|trace")
      ->required();
  gen->add_option("--n", n, "agents")->required();
  gen->add_option("--m", m, "resources (default 2)");
  gen->add_option("--alpha", alpha, "group-ratio parameter");
  gen->add_option("--beta", beta, "demand-mixture parameter (m >= 3)");
  gen->add_option("--seed", seed, "PRNG seed");
  gen->add_option("--path", trace_path, "trace CSV (kind = trace)");
  gen->add_option("-o,--out", out_path, "output instance file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags/args are input errors
  }

  try {
    if (solve->parsed()) return cmd_solve(in_path, tag, gspec, special, as_json);
    if (verify->parsed()) return cmd_verify(in_path, tag, gspec, special, sp_grid_k);
    if (sweep->parsed()) return cmd_sweep(config_path);
    fa::GeneratorSpec spec;
    spec.kind = parse_kind(kind);
    spec.n = n;
    spec.m = m;
    spec.alpha = alpha;
    spec.beta = beta;
    spec.seed = seed;
    spec.trace_path = trace_path;
    return cmd_gen(spec, out_path);
  } catch (const fa::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fa::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fa::Error& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 1;
  }
}
