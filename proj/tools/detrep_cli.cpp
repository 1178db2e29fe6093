// detrep — build, verify and benchmark exact determinantal pencils.
//
//   detrep build <construction> --m INT [--pretty] [...]
//   detrep verify <construction> --m INT [--mode all|symbolic|pit] [...]
//   detrep bench --m-range A:B --strategies ryser,pencil-path [...]
//
// Exit codes: 0 = success, 1 = a verification/cross-check failed, 2 = usage
// error (unknown construction, out-of-range parameter, bad flags).
// All reports are deterministic for a fixed --seed; bench timing columns are
// the only nondeterministic output and can be suppressed with --timing none.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "detrep/constructions.hpp"
#include "detrep/oracles.hpp"
#include "detrep/pencil.hpp"
#include "detrep/pencil_json.hpp"
#include "detrep/symmetry.hpp"
#include "detrep/verify.hpp"

namespace {

using detrep::json;
using detrep::Int;
using detrep::IntMatrix;
using detrep::PencilMatrix;

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << text;
}

PencilMatrix build_pencil(const std::string& name, int m, bool unsigned_block) {
  using namespace detrep;
  if (name == "grenet") return grenet(m, !unsigned_block);
  if (name == "regular-det") return regular_det(m);
  if (name == "equivariant-perm") return equivariant_perm(m);
  if (name == "equivariant-det") return equivariant_det(m);
  if (name == "quadric-half") return quadric_half(m);
  if (name == "quadric-full") return quadric_full(m);
  throw std::invalid_argument("unknown construction '" + name + "'");
}

std::string pretty_pencil(const PencilMatrix& p) {
  std::ostringstream os;
  os << p.construction << "  m=" << p.m << "  n=" << p.n << "  det = ";
  if (p.sign < 0) os << "-";
  if (p.expected_factor != 1) os << p.expected_factor.get_str() << " * ";
  os << detrep::target_name(p.target) << "\n";
  std::vector<std::size_t> width(p.n, 1);
  std::vector<std::vector<std::string>> cell(p.n, std::vector<std::string>(p.n));
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j) {
      cell[i][j] = p.at(i, j).str();
      width[j] = std::max(width[j], cell[i][j].size());
    }
  for (int i = 0; i < p.n; ++i) {
    os << "[ ";
    for (int j = 0; j < p.n; ++j) {
      os << std::string(width[j] - cell[i][j].size(), ' ') << cell[i][j]
         << (j + 1 < p.n ? "  " : "");
    }
    os << " ]\n";
  }
  return os.str();
}

std::string pretty_waring(const detrep::WaringDecomposition& w) {
  std::ostringstream os;
  os << "x_1*...*x_" << w.n << " = 1/" << w.denominator.get_str() << " * (\n";
  for (std::size_t t = 0; t < w.terms.size(); ++t) {
    const auto& term = w.terms[t];
    os << "    " << (term.sign > 0 ? "+" : "-") << " (";
    for (int j = 0; j < w.n; ++j) {
      if (j) os << (term.eps[j] > 0 ? " + " : " - ");
      else if (term.eps[j] < 0) os << "-";
      os << "x_" << j + 1;
    }
    os << ")^" << w.n << "\n";
  }
  os << ")     [" << w.terms.size() << " terms]\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// build

int cmd_build(const std::string& name, int m, int n_waring, bool symmetric,
              bool unsigned_block, bool pretty, const std::string& out) {
  if (name == "waring") {
    auto w = detrep::waring_terms(n_waring, symmetric);
    if (pretty) {
      write_output(pretty_waring(w), out);
      return 0;
    }
    json j;
    j["construction"] = "waring";
    j["n"] = w.n;
    j["symmetric"] = w.symmetric;
    j["denominator"] = detrep::json_int(w.denominator);
    j["term_count"] = w.terms.size();
    j["terms"] = json::array();
    for (auto& t : w.terms) j["terms"].push_back({{"eps", t.eps}, {"sign", t.sign}});
    write_output(j.dump(2) + "\n", out);
    return 0;
  }
  PencilMatrix p = build_pencil(name, m, unsigned_block);
  write_output(pretty ? pretty_pencil(p) : detrep::pencil_to_string(p, 2), out);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& name, int m, const std::string& mode, int trials,
               std::uint64_t seed, const std::string& equivariance, int samples,
               int jobs, bool as_json, const std::string& out,
               const std::string& from_file) {
  using namespace detrep;
  PencilMatrix p = from_file.empty() ? build_pencil(name, m, false) : [&] {
    std::ifstream f(from_file, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open pencil file: " + from_file);
    std::stringstream ss;
    ss << f.rdbuf();
    return pencil_from_string(ss.str());
  }();

  VerificationReport report;
  report.construction = p.construction;
  report.m = p.m;
  report.n = p.n;
  report.seed = seed;
  report.mode = mode;

  report.checks.push_back(check_regularity(p));

  const bool symbolic_feasible = p.n <= symbolic_det_bound();
  if (mode == "symbolic") {
    // explicit request: let the bound error surface as a usage error
    report.checks.push_back(identity_symbolic(p));
  } else if (mode == "pit") {
    PitOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    opt.jobs = jobs;
    report.checks.push_back(identity_pit(p, opt));
  } else if (mode == "all") {
    if (symbolic_feasible) {
      report.checks.push_back(identity_symbolic(p));
    } else if (p.layout.cyclic() && p.m <= 6 && p.target != Target::QuadricHalf &&
               p.target != Target::QuadricFull) {
      report.checks.push_back(identity_path_symbolic(p));
    }
    PitOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    opt.jobs = jobs;
    report.checks.push_back(identity_pit(p, opt));
    if (p.layout.cyclic() && p.n <= 128)
      report.checks.push_back(check_path_consistency(p, std::min(trials, 5), seed));
  } else {
    throw std::invalid_argument("unknown --mode '" + mode + "'");
  }

  if (equivariance != "none") {
    if (p.target == Target::QuadricHalf || p.target == Target::QuadricFull) {
      throw std::invalid_argument(
          "--equivariance: the quadric pencils carry no symmetry suite");
    }
    bool full = equivariance == "full";
    if (!full && equivariance != "left")
      throw std::invalid_argument("unknown --equivariance '" + equivariance + "'");
    auto suite = equivariance_suite(p, full, samples, seed);
    for (auto& c : suite) {
      auto r = check_equivariance(p, c.element);
      CheckResult cr;
      cr.name = "equivariance: " + c.description;
      cr.pass = r.pass;
      cr.details = r.pass ? "character " + r.character.get_str() : r.witness;
      report.checks.push_back(std::move(cr));
    }
  }

  if (as_json || !out.empty()) {
    json j;
    j["command"] = "verify";
    j["construction"] = report.construction;
    j["m"] = report.m;
    j["n"] = report.n;
    j["seed"] = report.seed;
    j["mode"] = report.mode;
    j["options"] = {{"trials", trials},
                    {"samples", samples},
                    {"equivariance", equivariance},
                    {"jobs", jobs}};
    j["checks"] = json::array();
    for (auto& c : report.checks)
      j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
    j["pass"] = report.pass();
    write_output(j.dump(2) + "\n", out);
  } else {
    std::ostringstream os;
    os << "verify " << report.construction << " m=" << report.m << " n=" << report.n
       << " seed=" << report.seed << " mode=" << report.mode << "\n";
    for (auto& c : report.checks)
      os << (c.pass ? "  PASS " : "  FAIL ") << c.name << " — " << c.details << "\n";
    os << (report.pass() ? "OK" : "FAILED") << "\n";
    write_output(os.str(), "");
  }
  return report.pass() ? 0 : kExitVerifyFail;
}

// ---------------------------------------------------------------------------
// bench

struct BenchRow {
  std::string construction;
  int m = 0, n = 0;
  std::string strategy;
  int trials = 0;
  std::uint64_t median_ns = 0;
  std::uint64_t checksum = 0;
};

int cmd_bench(const std::string& name, const std::string& m_range,
              const std::string& strategies_csv, int trials, std::uint64_t seed,
              int jobs, const std::string& timing, const std::string& format,
              const std::string& out) {
  using namespace detrep;
  using Clock = std::chrono::steady_clock;

  int m_lo = 0, m_hi = 0;
  {
    auto colon = m_range.find(':');
    if (colon == std::string::npos) {
      m_lo = m_hi = std::stoi(m_range);
    } else {
      m_lo = std::stoi(m_range.substr(0, colon));
      m_hi = std::stoi(m_range.substr(colon + 1));
    }
    if (m_lo < 2 || m_hi < m_lo)
      throw std::invalid_argument("--m-range: need 2 <= A <= B, got '" + m_range + "'");
  }
  std::vector<std::string> strategies;
  {
    std::stringstream ss(strategies_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item != "ryser" && item != "naive" && item != "pencil-dense" &&
          item != "pencil-path")
        throw std::invalid_argument("--strategies: unknown strategy '" + item + "'");
      strategies.push_back(item);
    }
    if (strategies.empty()) throw std::invalid_argument("--strategies: empty list");
  }
  if (name != "grenet" && name != "equivariant-perm")
    throw std::invalid_argument(
        "bench compares permanent evaluations; --construction must be grenet or "
        "equivariant-perm");
  if (timing != "median" && timing != "none")
    throw std::invalid_argument("--timing must be 'median' or 'none'");
  constexpr std::uint64_t kFold = 2305843009213693951ULL;  // 2^61 - 1

  std::vector<BenchRow> rows;
  std::ostringstream notes;
  for (int m = m_lo; m <= m_hi; ++m) {
    PencilMatrix p = build_pencil(name, m, false);
    PathPlan plan = make_path_plan(p);
    // Shared per-trial arguments.
    std::vector<IntMatrix> args;
    for (int t = 0; t < trials; ++t) {
      SplitMix64 rng(seed + 1000003ULL * static_cast<std::uint64_t>(m) + t);
      args.push_back(random_argument(p, rng));
    }
    // The pencil determinant equals sign * factor * perm; divide that out so
    // every strategy reports the same number.
    auto normalize = [&](Int v) {
      Int q;
      Int scale = Int(p.sign) * p.expected_factor;
      DETREP_CHECK(mpz_divisible_p(v.get_mpz_t(), scale.get_mpz_t()),
                   "bench: pencil determinant not divisible by its factor");
      mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), scale.get_mpz_t());
      return q;
    };

    std::vector<std::vector<Int>> values(strategies.size());
    for (std::size_t s = 0; s < strategies.size(); ++s) {
      const std::string& strat = strategies[s];
      if (strat == "naive" && m > kNaiveGuard) {
        notes << "note: skipping naive at m=" << m << " (guarded to m <= "
              << kNaiveGuard << ")\n";
        continue;
      }
      if (strat == "pencil-dense" && p.n > 255) {
        notes << "note: skipping pencil-dense at m=" << m << " (n=" << p.n
              << " > 255)\n";
        continue;
      }
      auto eval_one = [&](int t) -> std::pair<Int, std::uint64_t> {
        auto t0 = Clock::now();
        Int v;
        if (strat == "ryser") v = perm_ryser(args[t]);
        else if (strat == "naive") v = perm_naive(args[t]);
        else if (strat == "pencil-dense") v = normalize(det_exact(pencil_eval(p, args[t])));
        else v = normalize(path_det(plan, args[t]).value);
        auto t1 = Clock::now();
        return {v, static_cast<std::uint64_t>(
                       std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0)
                           .count())};
      };
      std::vector<Int> vals(trials);
      std::vector<std::uint64_t> times(trials);
      if (jobs <= 1) {
        for (int t = 0; t < trials; ++t) std::tie(vals[t], times[t]) = eval_one(t);
      } else {
        std::vector<std::future<void>> fs;
        std::atomic<int> next{0};
        for (int j = 0; j < jobs; ++j)
          fs.push_back(std::async(std::launch::async, [&] {
            for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1))
              std::tie(vals[t], times[t]) = eval_one(t);
          }));
        for (auto& f : fs) f.get();
      }
      values[s] = vals;
      std::sort(times.begin(), times.end());
      BenchRow row;
      row.construction = p.construction;
      row.m = m;
      row.n = p.n;
      row.strategy = strat;
      row.trials = trials;
      row.median_ns = timing == "none" ? 0 : times[times.size() / 2];
      std::uint64_t acc = 0;
      for (auto& v : vals) acc = detrep::addmod(detrep::mulmod(acc, 31, kFold),
                                                detrep::mod_of(v, kFold), kFold);
      row.checksum = acc;
      rows.push_back(row);
    }
    // Cross-check: all strategies that ran must agree on every trial.
    for (std::size_t a = 0; a < strategies.size(); ++a)
      for (std::size_t b = a + 1; b < strategies.size(); ++b) {
        if (values[a].empty() || values[b].empty()) continue;
        for (int t = 0; t < trials; ++t)
          if (values[a][t] != values[b][t]) {
            std::cerr << "bench: strategy mismatch at m=" << m << " trial " << t << ": "
                      << strategies[a] << " = " << values[a][t].get_str() << ", "
                      << strategies[b] << " = " << values[b][t].get_str() << "\n";
            return kExitVerifyFail;
          }
      }
  }

  std::cerr << notes.str();
  std::ostringstream os;
  if (format == "csv") {
    os << "construction,m,n,strategy,trials,median_ns,checksum\n";
    for (auto& r : rows)
      os << r.construction << "," << r.m << "," << r.n << "," << r.strategy << ","
         << r.trials << "," << r.median_ns << "," << r.checksum << "\n";
  } else if (format == "json") {
    json j;
    j["command"] = "bench";
    j["construction"] = name;
    j["seed"] = seed;
    j["trials"] = trials;
    j["timing"] = timing;
    j["rows"] = json::array();
    for (auto& r : rows)
      j["rows"].push_back({{"construction", r.construction},
                           {"m", r.m},
                           {"n", r.n},
                           {"strategy", r.strategy},
                           {"trials", r.trials},
                           {"median_ns", r.median_ns},
                           {"checksum", r.checksum}});
    os << j.dump(2) << "\n";
  } else {
    throw std::invalid_argument("--format must be 'csv' or 'json'");
  }
  write_output(os.str(), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact determinantal representations of permanents, determinants "
               "and quadrics"};
  app.require_subcommand(1);

  // ---- build ----
  auto* build = app.add_subcommand("build", "construct a pencil and print it");
  std::string b_name;
  int b_m = 3, b_n = 3;
  bool b_symmetric = false, b_unsigned = false, b_pretty = false;
  std::string b_out;
  build->add_option("construction", b_name,
                    "grenet | regular-det | equivariant-perm | equivariant-det | "
                    "quadric-half | quadric-full | waring")
      ->required();
  build->add_option("--m", b_m, "size parameter of the pencil constructions");
  build->add_option("--n", b_n, "number of variables (waring only)");
  build->add_flag("--symmetric", b_symmetric, "waring: use all 2^n sign vectors");
  build->add_flag("--unsigned-block", b_unsigned,
                  "grenet: keep the +identity corner block (determinant becomes "
                  "(-1)^(m+1) times the permanent)");
  build->add_flag("--pretty", b_pretty, "human-readable matrix instead of JSON");
  build->add_option("-o,--output", b_out, "write to a file instead of stdout");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "check the defining identities");
  std::string v_name, v_mode = "all", v_equiv = "none", v_out, v_from;
  int v_m = 3, v_trials = 20, v_samples = 20, v_jobs = 1;
  std::uint64_t v_seed = 1;
  bool v_json = false;
  verify->add_option("construction", v_name, "construction name")->required();
  verify->add_option("--m", v_m, "size parameter");
  verify->add_option("--mode", v_mode, "all | symbolic | pit (default all)");
  verify->add_option("--trials", v_trials, "random points per prime (default 20)");
  verify->add_option("--seed", v_seed, "base seed (default 1)");
  verify->add_option("--equivariance", v_equiv,
                     "none | left | full symmetry suite (default none)");
  verify->add_option("--samples", v_samples, "group elements per suite (default 20)");
  verify->add_option("--jobs", v_jobs, "parallel identity-test trials (default 1)");
  verify->add_flag("--json", v_json, "emit a JSON report");
  verify->add_option("-o,--output", v_out, "write the JSON report to a file");
  verify->add_option("--from", v_from, "verify a pencil loaded from a JSON file");

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "benchmark permanent evaluation");
  std::string n_name = "grenet", n_range = "2:7", n_strats = "ryser,pencil-path",
              n_timing = "median", n_format = "csv", n_out;
  int n_trials = 5, n_jobs = 1;
  std::uint64_t n_seed = 1;
  bench->add_option("--construction", n_name, "grenet (default) or equivariant-perm");
  bench->add_option("--m-range", n_range, "A:B inclusive (default 2:7)");
  bench->add_option("--strategies", n_strats,
                    "comma list of ryser,naive,pencil-dense,pencil-path");
  bench->add_option("--trials", n_trials, "evaluations per cell (default 5)");
  bench->add_option("--seed", n_seed, "argument seed (default 1)");
  bench->add_option("--jobs", n_jobs, "parallel trials (default 1)");
  bench->add_option("--timing", n_timing,
                    "median | none (none zeroes the timing column for "
                    "byte-reproducible reports)");
  bench->add_option("--format", n_format, "csv (default) | json");
  bench->add_option("-o,--output", n_out, "write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (build->parsed())
      return cmd_build(b_name, b_m, b_n, b_symmetric, b_unsigned, b_pretty, b_out);
    if (verify->parsed())
      return cmd_verify(v_name, v_m, v_mode, v_trials, v_seed, v_equiv, v_samples,
                        v_jobs, v_json, v_out, v_from);
    if (bench->parsed())
      return cmd_bench(n_name, n_range, n_strats, n_trials, n_seed, n_jobs, n_timing,
                       n_format, n_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitUsage;
}
