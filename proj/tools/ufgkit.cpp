#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufgkit/io.hpp"
#include "ufgkit/ufgkit.hpp"

using namespace ufgkit;
using io::Json;

namespace {

enum Exit : int { kOk = 0, kFailure = 1, kViolation = 2, kNegative = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::vector<std::size_t> n;
  std::string input;
  std::size_t max_size = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  bool json = false;
  std::string out;
  unsigned threads = 1;
  bool debug = false;
  bool verify = false;
  bool list = false;
  bool materialize = false;
  bool oracle = false;
  std::string strategy = "exhaustive";
  std::size_t cap = 0;
  bool cap_ack = false;
};

// Human text goes to stdout unless --json claims it.
class Output {
 public:
  explicit Output(const Config& cfg) : cfg_(cfg) {}

  std::ostream& human() { return cfg_.json ? sink_ : std::cout; }

  void emit(const Json& doc) {
    if (cfg_.json) std::cout << io::dump(doc);
    if (!cfg_.out.empty()) {
      std::ofstream f(cfg_.out);
      if (!f) throw std::runtime_error("cannot write '" + cfg_.out + "'");
      f << io::dump(doc);
    }
  }

  bool wants_json() const { return cfg_.json || !cfg_.out.empty(); }

 private:
  const Config& cfg_;
  std::ostringstream sink_;
};

void apply_cap(const Config& cfg) {
  const char* env = std::getenv("UFGKIT_CAP");
  if (cfg.cap == 0 && !env) return;
  if (!cfg.cap_ack) throw UsageError("raising the ground-set cap requires --cap-override-ack");
  if (cfg.cap) setenv("UFGKIT_CAP", std::to_string(cfg.cap).c_str(), 1);
}

std::size_t single_n(const Config& cfg) {
  if (cfg.n.size() != 1) throw UsageError("expected exactly one value for -n");
  return cfg.n.front();
}

std::vector<Poset> load_family(const std::string& path) {
  const auto doc = io::read_file(path);
  if (doc.is_object() && doc.contains("elements")) return {io::poset_from_json(doc)};
  return io::family_from_json(doc);
}

std::vector<Poset> require_family(const Config& cfg) {
  if (cfg.input.empty()) throw UsageError("this command needs --input <file.json>");
  return load_family(cfg.input);
}

// Either -n N (all posets) or --input pool.json.
struct Universe {
  Ground ground;
  std::optional<std::vector<Poset>> pool;
};

Universe resolve_universe(const Config& cfg) {
  if (!cfg.n.empty() && !cfg.input.empty()) throw UsageError("-n and --input are mutually exclusive");
  if (!cfg.input.empty()) {
    auto pool = load_family(cfg.input);
    auto ground = pool.front().ground();
    return {ground, std::move(pool)};
  }
  if (cfg.n.empty()) throw UsageError("this command needs -n <N> or --input <file.json>");
  const auto n = single_n(cfg);
  require_within_cap(n, ground_cap());
  return {make_indexed_ground(n), std::nullopt};
}

std::string labels_text(const GroundSet& g) {
  std::string out;
  for (const auto& l : g.labels()) out += (out.empty() ? "" : " ") + l;
  return out;
}

std::string join(const AttributeSet& attrs, const GroundSet& g) {
  std::string out;
  for (const auto& m : attrs.to_vector()) out += (out.empty() ? "" : ", ") + to_text(m, g);
  return out;
}

void print_counts(std::ostream& os, const std::map<std::size_t, std::size_t>& counts) {
  for (auto [size, count] : counts) os << "  size " << size << ": " << count << "\n";
}

EnumerationOptions enumeration_options(const Config& cfg) {
  EnumerationOptions opts;
  opts.max_size = cfg.max_size;
  opts.threads = cfg.threads;
  if (cfg.budget) opts.subset_budget = cfg.budget;
  return opts;
}

int cmd_posets(const Config& cfg) {
  const auto n = single_n(cfg);
  require_within_cap(n, ground_cap());
  const auto ground = make_indexed_ground(n);
  Output out(cfg);
  Json doc = Json::object();
  doc["elements"] = io::labels_to_json(*ground);
  std::size_t count = 0;
  Json list = Json::array();
  for_each_poset(ground, [&](const Poset& p) {
    ++count;
    if (!cfg.list) return;
    if (out.wants_json()) list.push_back(io::to_json(p));
    if (!cfg.json) std::cout << io::to_json(p).dump() << "\n";
  });
  doc["count"] = count;
  if (cfg.list) {
    doc["posets"] = std::move(list);
    std::cerr << count << "\n";
  } else {
    out.human() << count << "\n";
  }
  if (out.wants_json()) out.emit(doc);
  return kOk;
}

int cmd_closure(const Config& cfg) {
  const auto family = require_family(cfg);
  const auto iv = gamma_interval(family);
  const auto& g = *iv.ground();
  const bool countable = g.size() <= ground_cap();
  Output out(cfg);
  auto& os = out.human();
  Json doc = Json::object();
  doc["elements"] = io::labels_to_json(g);
  doc["lower"] = io::to_json(iv.lower().relation());
  doc["upper"] = io::to_json(iv.upper());
  os << "lower: " << to_text(iv.lower()) << "\n";
  os << "upper: " << to_text(iv.upper()) << "\n";
  if (countable) {
    const auto size = count_interval_posets(iv);
    doc["size"] = size;
    os << "size: " << size << "\n";
  } else {
    doc["size"] = nullptr;
    os << "size: not counted (ground set exceeds the enumeration cap)\n";
  }
  if (cfg.materialize) {
    Json members = Json::array();
    for_each_interval_poset(iv, [&](const Poset& p) {
      members.push_back(io::to_json(p));
      os << "  " << to_text(p) << "\n";
    });
    doc["members"] = std::move(members);
  }
  int code = kOk;
  if (cfg.oracle) {
    const auto ctx = FormalContext::all_posets(iv.ground());
    const auto explicit_members = gamma_explicit(family, ctx);
    const auto members = enumerate_interval_posets(iv);
    const bool agrees = explicit_members == members;
    doc["oracle_agrees"] = agrees;
    os << "oracle: " << (agrees ? "agrees" : "DISAGREES") << " (" << explicit_members.size() << " posets)\n";
    if (!agrees) code = kViolation;
  }
  if (out.wants_json()) out.emit(doc);
  return code;
}

int cmd_check_ufg(const Config& cfg) {
  const auto members = require_family(cfg);
  const auto family = normalize_family(members);
  const auto& g = *family.front().ground();
  Output out(cfg);
  auto& os = out.human();
  const auto cert = is_ufg(family);

  int code = kOk;
  if (cfg.debug) {
    const bool by_distinguishing = is_ufg_by_distinguishing(family).has_value();
    const bool by_conditions = g.size() <= ground_cap() ? is_ufg_by_conditions(family) : cert.has_value();
    const bool verified = !cert || verify_certificate(*cert);
    os << "debug: distinguishing-set test " << (by_distinguishing == cert.has_value() ? "agrees" : "DISAGREES") << ", (C1)/(C2) oracle "
       << (by_conditions == cert.has_value() ? "agrees" : "DISAGREES") << ", certificate "
       << (verified ? "verified" : "INVALID") << "\n";
    if (by_distinguishing != cert.has_value() || by_conditions != cert.has_value() || !verified)
      throw std::logic_error("ufg deciders disagree on this family");
  }

  if (cert) {
    os << "ufg: yes (" << family.size() << " members)\n";
    os << "witness: " << to_text(cert->witness) << "\n";
    for (const auto& d : cert->per_member) os << "  " << to_text(d.member) << ": " << join(d.attributes, g) << "\n";
    if (g.size() <= ground_cap()) {
      const auto all = ufg_witnesses(family);
      os << "all witnesses (" << all.size() << "):\n";
      for (const auto& w : all) os << "  " << to_text(w) << "\n";
    }
    if (out.wants_json()) out.emit(io::to_json(*cert));
    return code;
  }

  std::string reason;
  if (family.size() == 1) {
    reason = "(C1) fails: γ({p}) = {p}";
  } else if (!check_c1(family)) {
    reason = "(C1) fails: γ(S) = S";
  } else {
    reason = "(C2) fails: every poset of γ(S) outside S lies in some γ(S \\ {x})";
  }
  if (members.size() != family.size()) reason += " (duplicate members removed)";
  os << "ufg: no\nreason: " << reason << "\n";
  if (out.wants_json()) {
    Json doc = Json::object();
    doc["ufg"] = false;
    doc["members"] = io::family_to_json(family);
    doc["reason"] = reason;
    out.emit(doc);
  }
  return kNegative;
}

int cmd_enumerate(const Config& cfg) {
  if (cfg.strategy != "exhaustive" && cfg.strategy != "connected")
    throw UsageError("--strategy must be 'exhaustive' or 'connected'");
  const auto universe = resolve_universe(cfg);
  const auto opts = enumeration_options(cfg);
  Output out(cfg);
  auto& os = out.human();

  const bool connected = cfg.strategy == "connected";
  auto run = [&](bool use_connected) {
    return use_connected ? enumerate_ufg_connected(universe.ground, opts, universe.pool)
                         : enumerate_ufg_exhaustive(universe.ground, opts, universe.pool);
  };
  const auto catalog = run(connected);
  std::string guarantee = connected ? "heuristic-complete (not verified)" : "complete (exhaustive)";
  int code = kOk;
  std::string verdict;
  if (cfg.verify) {
    const auto other = run(!connected);
    if (catalog.same_families(other)) {
      verdict = "catalogs identical";
      guarantee = "complete (connected and exhaustive catalogs identical)";
    } else {
      verdict = "catalogs differ: " + std::to_string(catalog.size()) + " vs " + std::to_string(other.size()) + " families";
      code = kViolation;
    }
  }

  os << "ground: " << labels_text(*universe.ground) << "\n";
  os << "strategy: " << cfg.strategy << "\n";
  os << "guarantee: " << guarantee << "\n";
  os << "ufg sets: " << catalog.size() << "\n";
  print_counts(os, catalog.stats().count_by_size);
  os << "families tested: " << catalog.stats().families_tested << "\n";
  if (connected) os << "candidates pruned: " << catalog.stats().candidates_pruned << "\n";
  if (!verdict.empty()) (cfg.json ? std::cerr : std::cout) << verdict << "\n";
  if (out.wants_json()) out.emit(io::to_json(catalog));
  return code;
}

int cmd_connectedness(const Config& cfg) {
  const auto universe = resolve_universe(cfg);
  const auto report = verify_connectedness(universe.ground, enumeration_options(cfg), universe.pool);
  Output out(cfg);
  auto& os = out.human();
  os << "ground: " << labels_text(*report.ground) << "\n";
  os << "ufg sets by size:\n";
  print_counts(os, report.count_by_size);
  os << "checked (size >= 3): " << report.checked << "\n";
  os << "connected: " << report.connected << "\n";
  os << "violations: " << report.violations.size() << "\n";
  for (const auto& v : report.violations) {
    os << "  family without ufg predecessor:\n";
    for (const auto& p : v.certificate.family) os << "    " << to_text(p) << "\n";
  }
  if (out.wants_json()) out.emit(io::to_json(report));
  return report.violations.empty() ? kOk : kViolation;
}

int cmd_corrigendum(const Config& cfg) {
  const auto scenario = run_corrigendum();
  Output out(cfg);
  auto& os = out.human();
  os << "ground: " << labels_text(*scenario.ground) << "\n";
  os << "p1: " << to_text(scenario.p1) << "\n";
  os << "p2: " << to_text(scenario.p2) << "\n";
  os << "p3: " << to_text(scenario.p3) << "\n";
  os << "q:  " << to_text(scenario.q) << "\n";
  for (const auto& c : scenario.checks)
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  if (out.wants_json()) out.emit(io::to_json(scenario));
  return scenario.all_passed() ? kOk : kViolation;
}

int cmd_falsify(const Config& cfg) {
  if (cfg.n.empty()) throw UsageError("falsify needs -n <N> [N...]");
  FalsificationOptions opts;
  opts.threads = cfg.threads;
  const auto budget = cfg.budget ? cfg.budget : 1000;
  const auto report = falsification_search(cfg.n, budget, cfg.seed, opts);
  Output out(cfg);
  auto& os = out.human();
  os << "falsify: n =";
  for (auto n : cfg.n) os << " " << n;
  os << ", budget = " << budget << ", seed = " << cfg.seed << "\n";
  os << "trials run: " << report.trials_run << "\n";
  os << "trials without a ufg pair: " << report.trials_without_seed << "\n";
  os << "families checked: " << report.families_checked << "\n";
  for (auto [size, count] : report.checked_by_size) os << "  size " << size << ": " << count << "\n";
  os << "largest family: " << report.largest_family << "\n";
  if (report.violation) {
    os << "VIOLATION in trial " << *report.violation_trial << ":\n";
    for (const auto& p : report.violation->certificate.family) os << "  " << to_text(p) << "\n";
  } else {
    os << "violation: none\n";
  }
  if (out.wants_json()) out.emit(io::to_json(report));
  return report.violation ? kViolation : kOk;
}

void add_common(CLI::App* sub, Config& cfg, bool ground_from_n) {
  if (ground_from_n) sub->add_option("-n", cfg.n, "Ground-set size (items x1..xN)");
  sub->add_option("--input", cfg.input, "Poset or family JSON file");
  sub->add_option("--max-size", cfg.max_size, "Largest family size to consider");
  sub->add_option("--seed", cfg.seed, "Random seed");
  sub->add_option("--budget", cfg.budget, "Subset budget (enumerate) or number of trials (falsify)");
  sub->add_flag("--json", cfg.json, "Print JSON instead of text");
  sub->add_option("--out", cfg.out, "Write JSON to this file");
  sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--debug", cfg.debug, "Cross-validate with the slower deciders");
  sub->add_flag("--verify", cfg.verify, "Run both enumeration strategies and compare");
  sub->add_option("--cap", cfg.cap, "Raise the ground-set enumeration cap");
  sub->add_flag("--cap-override-ack", cfg.cap_ack, "Acknowledge a raised cap");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ufgkit: closure, ufg sets and connectedness on finite posets"};
  app.require_subcommand(1);
  Config cfg;

  auto* posets = app.add_subcommand("posets", "Count (and list) all posets on N items");
  add_common(posets, cfg, true);
  posets->add_flag("--list", cfg.list, "Stream the posets as JSON lines");

  auto* closure = app.add_subcommand("closure", "Closure interval of a family");
  add_common(closure, cfg, false);
  closure->add_flag("--materialize", cfg.materialize, "List every member of the closure");
  closure->add_flag("--oracle", cfg.oracle, "Cross-check against the explicit derivation");

  auto* check = app.add_subcommand("check-ufg", "Decide whether a family is union-free generic");
  add_common(check, cfg, false);

  auto* enumerate = app.add_subcommand("enumerate", "Catalog all ufg families");
  add_common(enumerate, cfg, true);
  enumerate->add_option("--strategy", cfg.strategy, "exhaustive or connected");

  auto* connectedness = app.add_subcommand("connectedness", "Check that every ufg family has a ufg predecessor");
  add_common(connectedness, cfg, true);

  auto* corrigendum = app.add_subcommand("corrigendum", "Evaluate the five-item counterexample scenario");
  add_common(corrigendum, cfg, false);

  auto* falsify = app.add_subcommand("falsify", "Randomized search for connectedness violations");
  add_common(falsify, cfg, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFailure;
  }

  try {
    apply_cap(cfg);
    if (*posets) return cmd_posets(cfg);
    if (*closure) return cmd_closure(cfg);
    if (*check) return cmd_check_ufg(cfg);
    if (*enumerate) return cmd_enumerate(cfg);
    if (*connectedness) return cmd_connectedness(cfg);
    if (*corrigendum) return cmd_corrigendum(cfg);
    if (*falsify) return cmd_falsify(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
  }
  return kFailure;
}
