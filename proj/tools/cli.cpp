#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "nilzeta/canonical.hpp"
#include "nilzeta/errors.hpp"
#include "nilzeta/heisenberg.hpp"
#include "nilzeta/lattice.hpp"
#include "nilzeta/orbits.hpp"
#include "nilzeta/series.hpp"

namespace nilzeta::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";
// Refuse ideal-condition sweeps over more sublattices than this.
constexpr std::uint64_t kMaxSublattices = 5'000'000;

enum class Format { json, csv, plain };

struct RunConfig {
  std::string subcommand;
  Int p = 2;
  std::string p_list = "2";
  int n = 0;
  Int max_n = 0;
  int max_degree = series::kDefaultMaxDegree;
  Format format = Format::json;
  bool list = false;
  bool meta = false;
  bool fallback = false;
  std::uint64_t budget = orbits::Budget{}.max_ideals;
  unsigned threads = 0;
  std::string matrix;
  std::string tuple;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class Mismatch : public Error {
 public:
  using Error::Error;
};

void require_prime(Int p) {
  if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
}

std::vector<Int> parse_prime_list(const std::string& text) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("malformed prime list '" + text + "'");
    }
    require_prime(out.back());
  }
  if (out.empty()) throw UsageError("empty prime list");
  return out;
}

orbits::Budget budget_of(const RunConfig& cfg) {
  orbits::Budget b;
  b.max_ideals = cfg.budget;
  return b;
}

std::string fixed(long double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << static_cast<double>(v);
  return os.str();
}

void emit_json(std::ostream& out, json doc, const RunConfig& cfg, std::chrono::steady_clock::time_point start) {
  if (cfg.meta) {
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    doc["meta"] = {{"tool", "nilzeta"}, {"version", kVersion}, {"subcommand", cfg.subcommand}, {"elapsed_seconds", elapsed}};
  }
  out << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

int cmd_local(const RunConfig& cfg, std::ostream& out, std::chrono::steady_clock::time_point start) {
  if (cfg.max_degree < 0) throw UsageError("--max-degree must be nonnegative");
  const auto s = series::local_factor_closed_form(cfg.max_degree);
  switch (cfg.format) {
    case Format::json:
      emit_json(out, json{{"max_degree", cfg.max_degree}, {"coefficients", s.coeffs()}}, cfg, start);
      break;
    case Format::csv:
      out << "degree,coefficient\n";
      for (int k = 0; k <= s.max_degree(); ++k) out << k << ',' << s[k] << '\n';
      break;
    case Format::plain:
      for (int k = 0; k <= s.max_degree(); ++k) out << "t^" << k << "  " << s[k] << '\n';
      break;
  }
  return kExitOk;
}

int cmd_global(const RunConfig& cfg, std::ostream& out, std::chrono::steady_clock::time_point start) {
  if (cfg.max_n < 1) throw UsageError("--max-n must be at least 1");
  const auto g = series::global_coefficients(cfg.max_n);
  switch (cfg.format) {
    case Format::json:
      emit_json(out, json{{"max_n", cfg.max_n}, {"values", g.values()}}, cfg, start);
      break;
    case Format::csv:
      out << "n,g\n";
      for (Int n = 1; n <= g.bound(); ++n) out << n << ',' << g(n) << '\n';
      break;
    case Format::plain:
      for (Int n = 1; n <= g.bound(); ++n) out << std::setw(10) << n << "  " << g(n) << '\n';
      break;
  }
  return kExitOk;
}

int cmd_summatory(const RunConfig& cfg, std::ostream& out, std::chrono::steady_clock::time_point start) {
  if (cfg.max_n < 1) throw UsageError("--max-n must be at least 1");
  const auto r = series::summatory(cfg.max_n);
  switch (cfg.format) {
    case Format::json:
      emit_json(out,
                json{{"max_n", r.bound},
                     {"summatory", r.summatory},
                     {"ratio", static_cast<double>(r.ratio)},
                     {"target_constant", static_cast<double>(r.target_constant)},
                     {"relative_error", static_cast<double>(r.relative_error())}},
                cfg, start);
      break;
    case Format::csv:
      out << "max_n,summatory,ratio,target_constant,relative_error\n"
          << r.bound << ',' << r.summatory << ',' << fixed(r.ratio, 12) << ',' << fixed(r.target_constant, 12) << ','
          << fixed(r.relative_error(), 12) << '\n';
      break;
    case Format::plain:
      out << "N                " << r.bound << '\n'
          << "S(N)             " << r.summatory << '\n'
          << "S(N)/N           " << fixed(r.ratio, 12) << '\n'
          << "pi^6/540 z(3)^2  " << fixed(r.target_constant, 12) << '\n'
          << "relative error   " << fixed(r.relative_error(), 12) << '\n';
      break;
  }
  return kExitOk;
}

int cmd_ideals(const RunConfig& cfg, std::ostream& out, std::chrono::steady_clock::time_point start) {
  require_prime(cfg.p);
  if (cfg.n < 0) throw UsageError("--n must be nonnegative");
  const std::uint64_t count = lattice::ideal_count(cfg.p, cfg.n);
  if (cfg.list && count > cfg.budget)
    throw UsageError(std::to_string(count) + " ideals exceed the listing budget of " + std::to_string(cfg.budget));
  std::vector<std::string> rows;
  if (cfg.list)
    for (const auto& m : lattice::enumerate_ideals(cfg.p, cfg.n)) rows.push_back(lattice::format_matrix(m));
  switch (cfg.format) {
    case Format::json: {
      json doc{{"p", cfg.p}, {"n", cfg.n}, {"count", count}};
      if (cfg.list) doc["ideals"] = rows;
      emit_json(out, doc, cfg, start);
      break;
    }
    case Format::csv:
      if (cfg.list) {
        out << "matrix\n";
        for (const auto& r : rows) out << '"' << r << "\"\n";
      } else {
        out << "p,n,count\n" << cfg.p << ',' << cfg.n << ',' << count << '\n';
      }
      break;
    case Format::plain:
      out << count << " ideals of index " << cfg.p << "^" << cfg.n << '\n';
      for (const auto& r : rows) out << "  " << r << '\n';
      break;
  }
  return kExitOk;
}

int cmd_orbits(const RunConfig& cfg, std::ostream& out, std::chrono::steady_clock::time_point start) {
  require_prime(cfg.p);
  if (cfg.n < 0) throw UsageError("--n must be nonnegative");
  const auto part = orbits::orbit_partition(cfg.p, cfg.n, budget_of(cfg));
  struct Row {
    std::string rep, tuple;
    std::size_t size;
    std::vector<std::string> members;
  };
  std::vector<Row> rows;
  for (const auto& cell : part.orbits()) {
    Row r{lattice::format_matrix(cell.front()), canonical::format_tuple(canonical::canonical_invariants(cell.front())),
          cell.size(), {}};
    if (cfg.list)
      for (const auto& m : cell) r.members.push_back(lattice::format_matrix(m));
    rows.push_back(std::move(r));
  }
  switch (cfg.format) {
    case Format::json: {
      json cells = json::array();
      for (const auto& r : rows) {
        json c{{"representative", r.rep}, {"tuple", r.tuple}, {"size", r.size}};
        if (cfg.list) c["members"] = r.members;
        cells.push_back(std::move(c));
      }
      emit_json(out, json{{"p", cfg.p}, {"n", cfg.n}, {"count", part.size()}, {"ideal_count", part.ideal_count()}, {"orbits", cells}},
                cfg, start);
      break;
    }
    case Format::csv:
      out << "representative,tuple,size\n";
      for (const auto& r : rows) out << '"' << r.rep << "\",\"" << r.tuple << "\"," << r.size << '\n';
      break;
    case Format::plain:
      out << part.size() << " orbits on " << part.ideal_count() << " ideals of index " << cfg.p << "^" << cfg.n << '\n';
      for (const auto& r : rows) {
        out << "  " << std::left << std::setw(28) << r.rep << std::setw(12) << r.tuple << r.size << '\n';
        for (const auto& m : r.members) out << "      " << m << '\n';
      }
      break;
  }
  return kExitOk;
}

int cmd_canonical(const RunConfig& cfg, std::ostream& out, std::chrono::steady_clock::time_point start) {
  require_prime(cfg.p);
  if (cfg.matrix.empty() == cfg.tuple.empty()) throw UsageError("give exactly one of --matrix or --tuple");
  json doc{{"p", cfg.p}};
  std::string plain;
  if (!cfg.matrix.empty()) {
    const auto m = lattice::hnf(lattice::parse_matrix(cfg.matrix), cfg.p);
    if (!lattice::is_ideal_hnf(m)) throw NotAnIdeal(lattice::format_matrix(m) + " is not an ideal");
    canonical::InvariantTuple t;
    if (cfg.fallback) {
      t = canonical::canonical_invariants_by_orbit(m, orbits::orbit_partition(cfg.p, m.index_exponent(), budget_of(cfg)));
    } else {
      t = canonical::canonical_invariants(m);
    }
    plain = canonical::format_tuple(t);
    doc["hnf"] = lattice::format_matrix(m);
    doc["tuple"] = plain;
    doc["normal_form"] = lattice::format_matrix(canonical::tuple_to_matrix(t, cfg.p));
    doc["method"] = cfg.fallback ? "orbit-search" : "reduction";
  } else {
    const auto t = canonical::parse_tuple(cfg.tuple);
    const auto m = canonical::tuple_to_matrix(t, cfg.p);
    plain = lattice::format_matrix(m);
    doc["tuple"] = canonical::format_tuple(t);
    doc["normal_form"] = plain;
    doc["weight"] = canonical::weight(t);
  }
  switch (cfg.format) {
    case Format::json:
      emit_json(out, doc, cfg, start);
      break;
    case Format::csv:
      out << "p,tuple,normal_form\n"
          << cfg.p << ",\"" << doc["tuple"].get<std::string>() << "\",\"" << doc["normal_form"].get<std::string>() << "\"\n";
      break;
    case Format::plain:
      out << plain << '\n';
      break;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  Int p = 0;
  int n = 0;
  std::string expected, actual, detail;
  bool passed = false;
};

json to_json(const Check& c) {
  json j{{"check", c.name}, {"p", c.p}, {"n", c.n}, {"expected", c.expected}, {"actual", c.actual}, {"passed", c.passed}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

std::vector<Check> verify_job(Int p, int n, const orbits::Budget& budget) {
  std::vector<Check> checks;
  const Int c_n = series::local_factor_closed_form(std::max(n, 0))[n];

  {
    Check c{"ideal_condition", p, n, "0 disagreements", "", "", true};
    std::size_t bad = 0, total = 0;
    for (const auto& m : lattice::enumerate_sublattices(p, n)) {
      ++total;
      if (lattice::is_ideal_hnf(m) != heisenberg::is_ideal_bracket(m)) {
        if (bad++ == 0) c.detail = "first disagreement at " + lattice::format_matrix(m);
      }
    }
    c.actual = std::to_string(bad) + " disagreements over " + std::to_string(total) + " sublattices";
    c.passed = bad == 0;
    checks.push_back(std::move(c));
  }

  const auto part = orbits::orbit_partition(p, n, budget);
  checks.push_back(Check{"orbit_count", p, n, std::to_string(c_n), std::to_string(part.size()), "",
                         static_cast<Int>(part.size()) == c_n});

  const auto tuples = canonical::enumerate_tuples(n);
  checks.push_back(Check{"tuple_count", p, n, std::to_string(c_n), std::to_string(tuples.size()), "",
                         static_cast<Int>(tuples.size()) == c_n});

  {
    Check c{"canonical_bijection", p, n, "bijection onto " + std::to_string(tuples.size()) + " tuples", "", "", true};
    std::map<canonical::InvariantTuple, std::size_t> seen;
    std::string problem;
    try {
      for (std::size_t cell = 0; cell < part.size() && problem.empty(); ++cell) {
        const auto t = canonical::canonical_invariants(part.representative(cell));
        for (const auto& m : part.orbits()[cell]) {
          if (canonical::canonical_invariants(m) != t) {
            problem = "not constant on the orbit of " + lattice::format_matrix(part.representative(cell)) + " at " +
                      lattice::format_matrix(m);
            break;
          }
        }
        if (!seen.emplace(t, cell).second) problem = "tuple " + canonical::format_tuple(t) + " hit by two orbits";
      }
      for (const auto& t : tuples) {
        if (!problem.empty()) break;
        auto it = seen.find(t);
        if (it == seen.end()) {
          problem = "tuple " + canonical::format_tuple(t) + " not reached";
        } else if (part.cell_of(canonical::tuple_to_matrix(t, p)) != it->second) {
          problem = "tuple " + canonical::format_tuple(t) + " lies outside its orbit";
        } else if (canonical::canonical_invariants(canonical::tuple_to_matrix(t, p)) != t) {
          problem = "round trip fails for " + canonical::format_tuple(t);
        }
      }
      if (problem.empty() && seen.size() != tuples.size()) problem = "tuple image has the wrong size";
    } catch (const ReductionDiverged& e) {
      problem = e.what();
    }
    c.passed = problem.empty();
    c.actual = c.passed ? c.expected : "no bijection";
    c.detail = problem;
    checks.push_back(std::move(c));
  }
  return checks;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::chrono::steady_clock::time_point start) {
  const auto primes = parse_prime_list(cfg.p_list);
  if (cfg.max_n < 0) throw UsageError("--max-n must be nonnegative");
  const auto budget = budget_of(cfg);
  struct Job {
    Int p;
    int n;
  };
  std::vector<Job> jobs;
  for (Int p : primes) {
    for (Int n = 0; n <= cfg.max_n; ++n) {
      const int ni = static_cast<int>(std::min<Int>(n, 1'000'000));
      const std::uint64_t ideals = lattice::ideal_count(p, ni);
      const std::uint64_t subs = lattice::sublattice_count(p, ni);
      if (ideals > budget.max_ideals || subs > kMaxSublattices) {
        throw UsageError("verify refused: p = " + std::to_string(p) + ", n = " + std::to_string(n) + " needs " +
                         std::to_string(ideals) + " ideals (budget " + std::to_string(budget.max_ideals) + ") and " +
                         std::to_string(subs) + " sublattices (limit " + std::to_string(kMaxSublattices) +
                         "); lower --max-n or raise --budget");
      }
      jobs.push_back({p, ni});
    }
  }

  std::vector<std::vector<Check>> results(jobs.size());
  std::vector<std::string> failures(jobs.size());
  unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = verify_job(jobs[i].p, jobs[i].n, budget);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (!failures[i].empty()) {
      results[i].push_back(Check{"job", jobs[i].p, jobs[i].n, "completed", "error", failures[i], false});
    }

  std::vector<Check> all;
  for (auto& r : results)
    for (auto& c : r) all.push_back(std::move(c));
  const auto first_fail = std::find_if(all.begin(), all.end(), [](const Check& c) { return !c.passed; });
  const bool ok = first_fail == all.end();

  switch (cfg.format) {
    case Format::json: {
      json checks = json::array();
      for (const auto& c : all) checks.push_back(to_json(c));
      emit_json(out,
                json{{"primes", primes},
                     {"max_n", cfg.max_n},
                     {"passed", ok},
                     {"checks", checks},
                     {"first_failure", ok ? json(nullptr) : to_json(*first_fail)}},
                cfg, start);
      break;
    }
    case Format::csv:
      out << "check,p,n,expected,actual,passed\n";
      for (const auto& c : all)
        out << c.name << ',' << c.p << ',' << c.n << ",\"" << c.expected << "\",\"" << c.actual << "\","
            << (c.passed ? "true" : "false") << '\n';
      break;
    case Format::plain:
      for (const auto& c : all) {
        out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(20) << c.name << " p=" << c.p << " n=" << c.n
            << "  expected " << c.expected << ", got " << c.actual << '\n';
      }
      if (!ok) {
        out << "first failure: " << first_fail->name << " p=" << first_fail->p << " n=" << first_fail->n << '\n'
            << "  expected: " << first_fail->expected << '\n'
            << "  actual:   " << first_fail->actual << '\n';
        if (!first_fail->detail.empty()) out << "  detail:   " << first_fail->detail << '\n';
      }
      out << (ok ? "all checks passed" : "verification FAILED") << '\n';
      break;
  }
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  RunConfig cfg;
  CLI::App app{"Exact enumeration of class-2 nilpotent groups on two generators", "nilzeta"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}, {"plain", Format::plain}};
  auto add_format = [&](CLI::App* sc) {
    sc->add_option("--format", cfg.format, "Output format: json (default), csv, plain")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sc->add_flag("--meta", cfg.meta, "Attach run metadata (timing) to JSON output");
  };

  auto* local = app.add_subcommand("local", "Coefficients of the local zeta factor");
  local->add_option("--max-degree", cfg.max_degree, "Truncation degree (default 64)");
  add_format(local);

  auto* global = app.add_subcommand("global", "g(n) for 1 <= n <= max-n");
  global->add_option("--max-n", cfg.max_n, "Upper bound N")->required();
  add_format(global);

  auto* summ = app.add_subcommand("summatory", "S(N) = sum of g(m) for m <= N, against the linear-growth constant");
  summ->add_option("--max-n", cfg.max_n, "Upper bound N")->required();
  add_format(summ);

  auto* ideals = app.add_subcommand("ideals", "Ideals of index p^n in the Heisenberg Lie ring");
  ideals->add_option("--p", cfg.p, "Prime")->required();
  ideals->add_option("--n", cfg.n, "Index exponent")->required();
  ideals->add_flag("--list", cfg.list, "List every ideal");
  ideals->add_option("--budget", cfg.budget, "Maximum number of ideals to list");
  add_format(ideals);

  auto* orbs = app.add_subcommand("orbits", "Automorphism orbits on ideals of index p^n");
  orbs->add_option("--p", cfg.p, "Prime")->required();
  orbs->add_option("--n", cfg.n, "Index exponent")->required();
  orbs->add_flag("--list", cfg.list, "List the members of every orbit");
  orbs->add_option("--budget", cfg.budget, "Maximum number of ideals to search");
  add_format(orbs);

  auto* canon = app.add_subcommand("canonical", "Normal-form tuple of an ideal, or the matrix of a tuple");
  canon->add_option("--p", cfg.p, "Prime")->required();
  canon->add_option("--matrix", cfg.matrix, "Nine comma-separated integers, row-major");
  canon->add_option("--tuple", cfg.tuple, "e1,e2,e3,e4,e5");
  canon->add_flag("--fallback", cfg.fallback, "Identify the tuple by orbit search instead of reduction");
  canon->add_option("--budget", cfg.budget, "Maximum number of ideals for --fallback");
  add_format(canon);

  auto* verify = app.add_subcommand("verify", "Cross-check formula, orbits and normal forms");
  verify->add_option("--p", cfg.p_list, "Comma-separated primes (default 2)");
  verify->add_option("--max-n", cfg.max_n, "Largest index exponent")->required();
  verify->add_option("--budget", cfg.budget, "Maximum number of ideals per (p, n)");
  verify->add_option("--threads", cfg.threads, "Worker threads (default: hardware concurrency)");
  add_format(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  for (auto* sc : app.get_subcommands()) cfg.subcommand = sc->get_name();

  try {
    if (cfg.subcommand == "local") return cmd_local(cfg, out, start);
    if (cfg.subcommand == "global") return cmd_global(cfg, out, start);
    if (cfg.subcommand == "summatory") return cmd_summatory(cfg, out, start);
    if (cfg.subcommand == "ideals") return cmd_ideals(cfg, out, start);
    if (cfg.subcommand == "orbits") return cmd_orbits(cfg, out, start);
    if (cfg.subcommand == "canonical") return cmd_canonical(cfg, out, start);
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out, start);
  } catch (const ReductionDiverged& e) {
    err << "defect: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "error: unknown subcommand\n";
  return kExitUsage;
}

}  // namespace nilzeta::cli
