#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ufgkit/context.hpp"
#include "ufgkit/error.hpp"
#include "ufgkit/interval.hpp"
#include "ufgkit/parallel.hpp"
#include "ufgkit/relation.hpp"
#include "ufgkit/ufg.hpp"

namespace ufgkit {

struct Predecessor {
  Family subset;
  Poset removed;
  UfgCertificate certificate;
};

/// Transcript of one leave-one-out subset that turned out not to be ufg.
struct LeaveOneOutFailure {
  Family subset;
  Poset removed;
  std::size_t closure_size;
};

/// A ufg family without any ufg subset of size m - 1, with everything needed
/// to re-check that claim.
struct ViolationRecord {
  UfgCertificate certificate;
  std::vector<LeaveOneOutFailure> failures;
};

namespace detail {

inline Family without(std::span<const Poset> family, std::size_t index) {
  Family out;
  out.reserve(family.size() - 1);
  for (std::size_t k = 0; k < family.size(); ++k)
    if (k != index) out.push_back(family[k]);
  return out;
}

struct PredecessorSearch {
  std::optional<Predecessor> found;
  std::optional<ViolationRecord> violation;
};

inline PredecessorSearch search_predecessor(std::span<const Poset> members) {
  const auto family = normalize_family(members);
  if (family.size() < 3) throw Error(ErrorKind::FamilyTooSmall, "predecessor search needs at least three members");
  auto cert = certify_normalized(family);
  if (!cert) throw Error(ErrorKind::NotUfgInput, "family is not union-free generic");

  PredecessorSearch out;
  std::vector<LeaveOneOutFailure> failures;
  for (std::size_t k = 0; k < family.size(); ++k) {
    auto subset = without(family, k);
    if (auto sub_cert = certify_normalized(subset)) {
      out.found = Predecessor{std::move(subset), family[k], std::move(*sub_cert)};
      return out;
    }
    const auto size = count_interval_posets(gamma_interval(subset));
    failures.push_back(LeaveOneOutFailure{std::move(subset), family[k], size});
  }
  out.violation = ViolationRecord{std::move(*cert), std::move(failures)};
  return out;
}

}  // namespace detail

/// First ufg leave-one-out subset in canonical member order (removing the
/// smallest member first); absent means the family breaks connectedness.
inline std::optional<Predecessor> has_predecessor(std::span<const Poset> members) {
  return detail::search_predecessor(members).found;
}

/// Re-checks a violation record from scratch.
inline bool verify_violation(const ViolationRecord& record) {
  const auto& family = record.certificate.family;
  if (!verify_certificate(record.certificate) || record.failures.size() != family.size()) return false;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& f = record.failures[k];
    if (!(f.removed == family[k]) || f.subset != detail::without(family, k)) return false;
    if (is_ufg(f.subset) || is_ufg_by_conditions(f.subset)) return false;
  }
  return true;
}

struct PredecessorWitness {
  Family family;
  Family predecessor;
  Poset witness;
};

struct ConnectednessReport {
  Ground ground;
  std::size_t checked = 0;
  std::size_t connected = 0;
  std::vector<ViolationRecord> violations;
  std::vector<PredecessorWitness> predecessors;
  std::map<std::size_t, std::size_t> count_by_size;
};

/// Runs the predecessor search on every family of size >= 3 in a catalog.
inline ConnectednessReport check_connectedness(const UfgCatalog& catalog, unsigned threads = 1) {
  ConnectednessReport report;
  report.ground = catalog.ground();
  report.count_by_size = catalog.stats().count_by_size;
  std::vector<const UfgCertificate*> targets;
  for (const auto& [key, cert] : catalog.entries())
    if (cert.family.size() >= 3) targets.push_back(&cert);

  std::vector<detail::PredecessorSearch> results(targets.size());
  detail::parallel_for(targets.size(), threads,
                       [&](std::size_t i) { results[i] = detail::search_predecessor(targets[i]->family); });

  for (std::size_t i = 0; i < targets.size(); ++i) {
    ++report.checked;
    if (results[i].found) {
      ++report.connected;
      report.predecessors.push_back(
          PredecessorWitness{targets[i]->family, results[i].found->subset, results[i].found->certificate.witness});
    } else {
      report.violations.push_back(std::move(*results[i].violation));
    }
  }
  return report;
}

/// Exhaustive catalog followed by a predecessor search on every family of size >= 3.
inline ConnectednessReport verify_connectedness(const Ground& ground, const EnumerationOptions& options = {},
                                                const std::optional<std::vector<Poset>>& premises = std::nullopt) {
  const auto catalog = enumerate_ufg_exhaustive(ground, options, premises);
  return check_connectedness(catalog, options.threads);
}

struct ScenarioCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct CorrigendumScenario {
  Ground ground;
  Poset p1, p2, p3, q;
  std::vector<ScenarioCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return !checks.empty();
  }
};

/// The three-poset counterexample on {a, b, a1, b1, c1} to the original
/// proof step, with each stated fact evaluated.
inline CorrigendumScenario run_corrigendum() {
  auto ground = make_ground({"a", "b", "a1", "b1", "c1"});
  std::vector<ScenarioCheck> checks;

  const std::vector<std::pair<std::string, std::vector<LabelPair>>> literals = {
      {"p1", {{"a", "b"}, {"a1", "c1"}}},
      {"p2", {{"a1", "b1"}}},
      {"p3", {{"b1", "c1"}}},
      {"q", {{"a", "b"}, {"a1", "b1"}, {"b1", "c1"}, {"a1", "c1"}}},
  };
  std::vector<Poset> parsed;
  std::string invalid;
  for (const auto& [name, pairs] : literals) {
    try {
      parsed.push_back(make_poset(ground, pairs));
    } catch (const Error& e) {
      invalid += name + ": " + e.what() + "; ";
      parsed.push_back(Poset::antichain(ground));
    }
  }
  checks.push_back({"(1) p1, p2, p3 and q are valid posets", invalid.empty(), invalid.empty() ? "validated" : invalid});

  const Poset &p1 = parsed[0], &p2 = parsed[1], &p3 = parsed[2], &q = parsed[3];
  const std::vector<Poset> all{p1, p2, p3};

  {
    const auto cert = is_ufg(all);
    const auto witnesses = ufg_witnesses(all);
    const bool q_is_witness = std::find(witnesses.begin(), witnesses.end(), q) != witnesses.end();
    const bool ok = cert && verify_certificate(*cert) && q_is_witness;
    checks.push_back({"(2) {p1,p2,p3} is ufg and q is one of its witnesses", ok,
                      std::to_string(witnesses.size()) + " witness(es); q " + (q_is_witness ? "among them" : "missing")});
  }

  checks.push_back({"(3) q lies in gamma({p1,p2,p3})", gamma_contains(all, q), to_text(gamma_interval(all).upper())});

  {
    bool ok = true;
    std::string detail;
    for (unsigned mask = 1; mask < 7; ++mask) {
      std::vector<Poset> subset;
      std::string name;
      for (unsigned k = 0; k < 3; ++k)
        if (mask & (1u << k)) {
          subset.push_back(all[k]);
          name += "p" + std::to_string(k + 1);
        }
      if (gamma_contains(subset, q)) {
        ok = false;
        detail += name + " contains q; ";
      }
    }
    checks.push_back({"(4) q lies in no closure of a proper nonempty subset", ok, ok ? "6 subsets checked" : detail});
  }

  {
    const auto& g = *ground;
    const auto a = g.index_of("a"), b = g.index_of("b"), a1 = g.index_of("a1"), c1 = g.index_of("c1");
    const auto parts = partition_distinguishing(all, q);
    const auto d1 = distinguishing(p1, all, q).attributes;
    const std::vector<Poset> rest{p2, p3};
    const auto upper = union_family(rest);
    const bool ok = parts.leq.empty() && parts.nleq.contains(nleq(a, b, g)) && d1.contains(nleq(a, b, g)) &&
                    d1.contains(nleq(a1, c1, g)) && !upper.contains(a, b) && !upper.contains(a1, c1) &&
                    !gamma_contains(rest, q);
    checks.push_back({"(5) dropping p1 for its pair (a,b) loses q: q not in gamma({p2,p3})", ok,
                      "D_leq empty, nleq(a,b) and nleq(a1,c1) distinguish p1; union of p2,p3 is " + to_text(upper)});
  }

  {
    const auto pred = has_predecessor(all);
    const Family expected = normalize_family(std::vector<Poset>{p1, p2});
    const bool ok = pred && pred->subset == expected;
    checks.push_back({"(6) a size-2 ufg subset still exists: {p1,p2}", ok,
                      pred ? "witness " + to_text(pred->certificate.witness) : "no predecessor"});
  }

  return CorrigendumScenario{ground, p1, p2, p3, q, std::move(checks)};
}

struct FalsificationOptions {
  std::size_t pool_min = 4;
  std::size_t pool_max = 8;
  unsigned threads = 1;
};

struct FalsificationReport {
  std::vector<std::size_t> n_range;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials_run = 0;
  std::uint64_t trials_without_seed = 0;
  std::uint64_t families_checked = 0;
  std::size_t largest_family = 0;
  std::map<std::size_t, std::uint64_t> checked_by_size;
  std::optional<ViolationRecord> violation;
  std::optional<std::uint64_t> violation_trial;
};

namespace detail {

// Per-trial generator: seed_seq and mt19937_64 are fully specified, and
// all bounded draws below avoid distribution classes, so runs reproduce
// across standard libraries.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial)
      : seq_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
             static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)},
        engine_(seq_) {}

  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::seed_seq seq_;
  std::mt19937_64 engine_;
};

// Random strict relation, transitively closed, kept if antisymmetric. Not
// uniform over posets.
inline Poset random_poset(const Ground& ground, TrialRng& rng) {
  const auto n = ground->size();
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto density = 5 + rng.below(40);  // percent
    bits::Word m = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && rng.below(100) < density) m |= bits::bit(i, j);
    m = bits::transitive_closure(m, n);
    if (bits::is_asymmetric(m, n)) return Poset(TrustedPoset{}, ground, m);
  }
  return Poset::antichain(ground);
}

struct TrialOutcome {
  bool seeded = false;
  std::size_t largest = 0;
  std::map<std::size_t, std::uint64_t> checked_by_size;
  std::optional<ViolationRecord> violation;
};

inline TrialOutcome run_trial(const std::vector<Ground>& grounds, std::uint64_t seed, std::uint64_t trial,
                              const FalsificationOptions& options) {
  TrialRng rng(seed, trial);
  const auto& ground = grounds[rng.below(grounds.size())];
  const auto target = options.pool_min + rng.below(options.pool_max - options.pool_min + 1);

  std::vector<Poset> pool;
  for (std::size_t attempt = 0; pool.size() < target && attempt < 10 * target; ++attempt) {
    auto p = random_poset(ground, rng);
    if (std::find(pool.begin(), pool.end(), p) == pool.end()) pool.push_back(p);
  }

  TrialOutcome out;
  std::vector<std::pair<std::size_t, std::size_t>> seeds;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) seeds.emplace_back(i, j);
  rng.shuffle(seeds);

  Family family;
  for (auto [i, j] : seeds) {
    if (is_ufg(std::vector<Poset>{pool[i], pool[j]})) {
      family = normalize_family(std::vector<Poset>{pool[i], pool[j]});
      break;
    }
  }
  if (family.empty()) return out;
  out.seeded = true;
  out.largest = 2;

  for (;;) {
    std::vector<Poset> candidates;
    for (const auto& p : pool)
      if (!family_contains(family, p)) candidates.push_back(p);
    rng.shuffle(candidates);
    bool grew = false;
    for (const auto& p : candidates) {
      if (!candidate_filter(family, p)) continue;
      Family grown = family;
      grown.insert(std::upper_bound(grown.begin(), grown.end(), p), p);
      if (!is_ufg(grown)) continue;
      family = std::move(grown);
      grew = true;
      break;
    }
    if (!grew) break;
    out.largest = family.size();
    ++out.checked_by_size[family.size()];
    auto search = search_predecessor(family);
    if (!search.found) {
      out.violation = std::move(search.violation);
      break;
    }
  }
  return out;
}

}  // namespace detail

/// Grows random ufg families from random pools and runs the predecessor
/// search at every size >= 3. Trial t depends only on (seed, t), so the
/// thread count never changes the report.
inline FalsificationReport falsification_search(const std::vector<std::size_t>& n_range, std::uint64_t budget,
                                                std::uint64_t seed, const FalsificationOptions& options = {}) {
  if (budget < 1) throw Error(ErrorKind::InvalidArgument, "falsification budget must be at least one trial");
  if (n_range.empty()) throw Error(ErrorKind::InvalidArgument, "falsification needs at least one ground-set size");
  if (options.pool_min < 2 || options.pool_max < options.pool_min)
    throw Error(ErrorKind::InvalidArgument, "pool size range must satisfy 2 <= min <= max");
  std::vector<Ground> grounds;
  for (auto n : n_range) {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "ground sets need at least two items for ufg families");
    require_within_cap(n, ground_cap());
    grounds.push_back(make_indexed_ground(n));
  }

  FalsificationReport report;
  report.n_range = n_range;
  report.budget = budget;
  report.seed = seed;

  auto absorb = [&](std::uint64_t t, detail::TrialOutcome& outcome) {
    ++report.trials_run;
    if (!outcome.seeded) ++report.trials_without_seed;
    if (outcome.largest > report.largest_family) report.largest_family = outcome.largest;
    for (auto [size, count] : outcome.checked_by_size) {
      report.checked_by_size[size] += count;
      report.families_checked += count;
    }
    if (outcome.violation) {
      report.violation = std::move(outcome.violation);
      report.violation_trial = t;
      return false;
    }
    return true;
  };

  if (options.threads <= 1) {
    for (std::uint64_t t = 0; t < budget; ++t) {
      auto outcome = detail::run_trial(grounds, seed, t, options);
      if (!absorb(t, outcome)) break;
    }
    return report;
  }

  std::vector<detail::TrialOutcome> outcomes(budget);
  detail::parallel_for(budget, options.threads,
                       [&](std::size_t t) { outcomes[t] = detail::run_trial(grounds, seed, t, options); });
  for (std::uint64_t t = 0; t < budget; ++t)
    if (!absorb(t, outcomes[t])) break;
  return report;
}

}  // namespace ufgkit
