#pragma once

// Union-free generic (ufg) families.
//
// A family S is ufg iff some witness q lies in gamma(S) \ S but in no
// leave-one-out closure gamma(S \ {x}). Equivalently, some q in gamma(S)
// leaves every member with a nonempty restricted distinguishing set. Both
// characterizations are implemented independently, next to a direct check of
// the two defining conditions, so they can be cross-validated.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ufgkit/bits.hpp"
#include "ufgkit/context.hpp"
#include "ufgkit/error.hpp"
#include "ufgkit/interval.hpp"
#include "ufgkit/parallel.hpp"
#include "ufgkit/relation.hpp"

namespace ufgkit {

/// A set of posets: sorted by canonical order, duplicate-free.
using Family = std::vector<Poset>;
using FamilyKey = std::vector<std::uint64_t>;

inline Family normalize_family(std::span<const Poset> members) {
  detail::family_ground(members);
  Family out(members.begin(), members.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline FamilyKey family_key(std::span<const Poset> family) {
  FamilyKey key;
  key.reserve(family.size());
  for (const auto& p : family) key.push_back(p.rank());
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  return key;
}

inline bool family_contains(std::span<const Poset> sorted_family, const Poset& q) noexcept {
  return std::binary_search(sorted_family.begin(), sorted_family.end(), q);
}

struct UfgCertificate {
  Family family;
  Poset witness;
  /// Restricted distinguishing sets, aligned with `family`.
  std::vector<DistinguishingSet> per_member;
};

namespace detail {

// Intervals of gamma(S \ {x}) for each member x of a sorted family. A
// singleton family leaves the empty family, whose closure is empty.
struct LeaveOneOut {
  std::vector<bits::Word> lower;
  std::vector<bits::Word> upper;

  explicit LeaveOneOut(std::span<const Poset> family) {
    const auto m = family.size();
    if (m < 2) return;
    std::vector<bits::Word> pre_and(m + 1, ~bits::Word{0}), pre_or(m + 1, 0);
    std::vector<bits::Word> suf_and(m + 1, ~bits::Word{0}), suf_or(m + 1, 0);
    for (std::size_t k = 0; k < m; ++k) {
      pre_and[k + 1] = pre_and[k] & family[k].bits();
      pre_or[k + 1] = pre_or[k] | family[k].bits();
    }
    for (std::size_t k = m; k-- > 0;) {
      suf_and[k] = suf_and[k + 1] & family[k].bits();
      suf_or[k] = suf_or[k + 1] | family[k].bits();
    }
    lower.resize(m);
    upper.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      lower[k] = pre_and[k] & suf_and[k + 1];
      upper[k] = pre_or[k] | suf_or[k + 1];
    }
  }

  bool any_contains(bits::Word q) const noexcept {
    for (std::size_t k = 0; k < lower.size(); ++k)
      if (bits::is_subset(lower[k], q) && bits::is_subset(q, upper[k])) return true;
    return false;
  }
};

// Visits every leave-one-out witness of a normalized family in canonical order;
// the visitor returns false to stop.
template <typename Visitor>
void scan_witnesses(std::span<const Poset> family, Visitor&& visit) {
  const LeaveOneOut loo(family);
  for_each_interval_poset(gamma_interval(family), [&](const Poset& q) -> bool {
    if (family_contains(family, q) || loo.any_contains(q.bits())) return true;
    return visit(q);
  });
}

inline UfgCertificate build_certificate(Family family, const Poset& witness) {
  std::vector<DistinguishingSet> per_member;
  per_member.reserve(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    auto attrs = distinguishing_at(family, k, &witness);
    if (attrs.empty())
      throw std::logic_error("witness " + to_text(witness) + " passes the leave-one-out test but leaves " +
                             to_text(family[k]) + " without a distinguishing attribute");
    per_member.push_back(DistinguishingSet{family[k], attrs, witness});
  }
  return UfgCertificate{std::move(family), witness, std::move(per_member)};
}

// Leave-one-out decision on an already normalized family.
inline std::optional<UfgCertificate> certify_normalized(Family family) {
  if (family.size() < 2) return std::nullopt;
  std::optional<Poset> found;
  scan_witnesses(family, [&](const Poset& q) {
    found = q;
    return false;
  });
  if (!found) return std::nullopt;
  return build_certificate(std::move(family), *found);
}

}  // namespace detail

/// (C1): gamma(S) holds a poset outside S.
inline bool check_c1(std::span<const Poset> members) {
  const auto family = normalize_family(members);
  bool found = false;
  for_each_interval_poset(gamma_interval(family), [&](const Poset& q) -> bool {
    found = !family_contains(family, q);
    return !found;
  });
  return found;
}

/// (C2) through the leave-one-out reduction: every family of proper subsets
/// is dominated by (S \ {x})_x, so (C2) holds iff gamma(S) has an element
/// outside every gamma(S \ {x}).
inline bool check_c2(std::span<const Poset> members) {
  const auto family = normalize_family(members);
  const detail::LeaveOneOut loo(family);
  bool found = false;
  for_each_interval_poset(gamma_interval(family), [&](const Poset& q) -> bool {
    found = !loo.any_contains(q.bits());
    return !found;
  });
  return found;
}

/// (C2) by brute force: gamma(S) against the union of the explicit
/// closures of all proper subsets. Exponential in |S|.
inline bool check_c2_oracle(std::span<const Poset> members, std::size_t cap = ground_cap()) {
  const auto family = normalize_family(members);
  if (family.size() > 16) throw Error(ErrorKind::InvalidArgument, "brute-force (C2) limited to 16 members");
  const auto ctx = FormalContext::all_posets(family.front().ground());
  const auto hull = gamma_explicit(family, ctx, cap);
  std::set<std::uint64_t> covered;
  const std::uint32_t full = (std::uint32_t{1} << family.size()) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    Family subset;
    for (std::size_t k = 0; k < family.size(); ++k)
      if (mask & (std::uint32_t{1} << k)) subset.push_back(family[k]);
    for (const auto& p : gamma_explicit(subset, ctx, cap)) covered.insert(p.rank());
  }
  for (const auto& p : hull)
    if (!covered.contains(p.rank())) return true;
  return false;
}

/// Leave-one-out decider. The certificate's witness is the first qualifying poset
/// in canonical order.
inline std::optional<UfgCertificate> is_ufg(std::span<const Poset> members) {
  if (members.size() < 2) return std::nullopt;
  return detail::certify_normalized(normalize_family(members));
}

/// Every leave-one-out witness of the family, in canonical order.
inline std::vector<Poset> ufg_witnesses(std::span<const Poset> members) {
  std::vector<Poset> out;
  if (members.size() < 2) return out;
  const auto family = normalize_family(members);
  if (family.size() < 2) return out;
  detail::scan_witnesses(family, [&](const Poset& q) {
    out.push_back(q);
    return true;
  });
  return out;
}

/// Distinguishing-attribute decider: some q in gamma(S) leaves every member
/// with a nonempty restricted distinguishing set. Returns that q.
inline std::optional<Poset> is_ufg_by_distinguishing(std::span<const Poset> members) {
  if (members.size() < 2) return std::nullopt;
  const auto family = normalize_family(members);
  if (family.size() < 2) return std::nullopt;
  std::optional<Poset> found;
  for_each_interval_poset(gamma_interval(family), [&](const Poset& q) -> bool {
    for (std::size_t k = 0; k < family.size(); ++k)
      if (detail::distinguishing_at(family, k, &q).empty()) return true;
    found = q;
    return false;
  });
  if (found && family_contains(family, *found))
    throw std::logic_error("distinguishing witness " + to_text(*found) + " is a member of its own family");
  return found;
}

/// (C1) and brute-force (C2), straight from the definition.
inline bool is_ufg_by_conditions(std::span<const Poset> members, std::size_t cap = ground_cap()) {
  if (members.empty()) return false;
  return check_c1(members) && check_c2_oracle(members, cap);
}

/// Re-derives every claim a certificate makes.
inline bool verify_certificate(const UfgCertificate& cert) {
  const auto& family = cert.family;
  if (family.size() < 2 || cert.per_member.size() != family.size()) return false;
  if (!std::is_sorted(family.begin(), family.end()) ||
      std::adjacent_find(family.begin(), family.end()) != family.end())
    return false;
  if (!gamma_contains(family, cert.witness) || family_contains(family, cert.witness)) return false;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto& d = cert.per_member[k];
    if (!(d.member == family[k]) || !d.restriction || !(*d.restriction == cert.witness)) return false;
    if (d.attributes.empty() || !(d.attributes == detail::distinguishing_at(family, k, &cert.witness))) return false;
    Family rest;
    for (std::size_t r = 0; r < family.size(); ++r)
      if (r != k) rest.push_back(family[r]);
    if (gamma_contains(rest, cert.witness)) return false;
  }
  return true;
}

/// Conservative pruning for extending a ufg family Q by p; true keeps p.
/// Rejects p in gamma(Q) (equivalently: p itself would have no distinguishing
/// attribute in Q + p) and p that leaves some member of Q without any
/// unrestricted distinguishing attribute in Q + p. Both make Q + p non-ufg.
inline bool candidate_filter(std::span<const Poset> ufg_family, const Poset& p) {
  detail::family_ground(ufg_family);
  require_same_ground(ufg_family.front().ground(), p.ground());
  if (std::find(ufg_family.begin(), ufg_family.end(), p) != ufg_family.end())
    throw Error(ErrorKind::InvalidArgument, "candidate " + to_text(p) + " already belongs to the family");
  if (gamma_contains(ufg_family, p)) return false;
  Family extended(ufg_family.begin(), ufg_family.end());
  extended.push_back(p);
  for (std::size_t k = 0; k + 1 < extended.size(); ++k)
    if (detail::distinguishing_at(extended, k, nullptr).empty()) return false;
  return true;
}

struct CatalogStats {
  std::map<std::size_t, std::size_t> count_by_size;
  std::uint64_t families_tested = 0;
  std::uint64_t candidates_pruned = 0;
  double seconds = 0.0;
};

/// Ufg families keyed by their sorted rank tuples.
class UfgCatalog {
 public:
  explicit UfgCatalog(Ground ground) : ground_(std::move(ground)) {}

  const Ground& ground() const noexcept { return ground_; }

  bool insert(UfgCertificate cert) {
    require_same_ground(ground_, cert.family.front().ground());
    auto key = family_key(cert.family);
    const auto size = cert.family.size();
    auto [it, inserted] = sets_.emplace(key, std::move(cert));
    if (inserted) {
      by_size_[size].insert(std::move(key));
      ++stats_.count_by_size[size];
    }
    return inserted;
  }

  bool contains(const FamilyKey& key) const { return sets_.contains(key); }
  bool contains(std::span<const Poset> family) const { return contains(family_key(family)); }

  const UfgCertificate* find(const FamilyKey& key) const {
    auto it = sets_.find(key);
    return it == sets_.end() ? nullptr : &it->second;
  }

  std::size_t size() const noexcept { return sets_.size(); }
  bool empty() const noexcept { return sets_.empty(); }

  const std::map<FamilyKey, UfgCertificate>& entries() const noexcept { return sets_; }

  std::vector<const UfgCertificate*> by_size(std::size_t size) const {
    std::vector<const UfgCertificate*> out;
    auto it = by_size_.find(size);
    if (it == by_size_.end()) return out;
    for (const auto& key : it->second) out.push_back(&sets_.at(key));
    return out;
  }

  std::size_t largest_size() const noexcept { return by_size_.empty() ? 0 : by_size_.rbegin()->first; }

  std::vector<FamilyKey> keys() const {
    std::vector<FamilyKey> out;
    out.reserve(sets_.size());
    for (const auto& [key, cert] : sets_) out.push_back(key);
    return out;
  }

  bool same_families(const UfgCatalog& other) const {
    if (sets_.size() != other.sets_.size()) return false;
    auto a = sets_.begin();
    auto b = other.sets_.begin();
    for (; a != sets_.end(); ++a, ++b)
      if (a->first != b->first) return false;
    return true;
  }

  CatalogStats& stats() noexcept { return stats_; }
  const CatalogStats& stats() const noexcept { return stats_; }

 private:
  Ground ground_;
  std::map<FamilyKey, UfgCertificate> sets_;
  std::map<std::size_t, std::set<FamilyKey>> by_size_;
  CatalogStats stats_;
};

struct EnumerationOptions {
  /// 0 selects the default bound 2 N (N - 1), the attribute count.
  std::size_t max_size = 0;
  /// Upper limit on candidate subsets tested by the exhaustive enumerator.
  std::uint64_t subset_budget = 20'000'000;
  unsigned threads = 1;
  /// 0 selects ground_cap().
  std::size_t cap = 0;
};

namespace detail {

inline std::size_t effective_max_size(const Ground& ground, const EnumerationOptions& options) {
  return options.max_size ? options.max_size : 2 * ground->pair_count();
}

inline Family premise_pool(const Ground& ground, const std::optional<std::vector<Poset>>& premises,
                           const EnumerationOptions& options) {
  if (!premises) return enumerate_all_posets(ground, options.cap ? options.cap : ground_cap());
  if (premises->empty()) return {};
  for (const auto& p : *premises) require_same_ground(ground, p.ground());
  return normalize_family(*premises);
}

inline std::uint64_t subset_count(std::size_t n, std::size_t max_size) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(n, k)
  for (std::size_t k = 1; k <= n && k <= max_size; ++k) {
    // C(n, k) = C(n, k-1) * (n - k + 1) / k, saturating
    const std::uint64_t factor = n - k + 1;
    if (binom > kMax / factor) return kMax;
    binom = binom * factor / k;
    if (k >= 2) {
      if (total > kMax - binom) return kMax;
      total += binom;
    }
  }
  return total;
}

}  // namespace detail

/// Tests every subset of the pool (default: all posets) with
/// 2 <= |S| <= max_size. The reference enumerator.
inline UfgCatalog enumerate_ufg_exhaustive(const Ground& ground, const EnumerationOptions& options = {},
                                          const std::optional<std::vector<Poset>>& premises = std::nullopt) {
  const auto start = std::chrono::steady_clock::now();
  const auto pool = detail::premise_pool(ground, premises, options);
  const auto max_size = detail::effective_max_size(ground, options);
  const auto budget = detail::subset_count(pool.size(), max_size);
  if (budget > options.subset_budget)
    throw Error(ErrorKind::CombinatorialBudgetExceeded,
                std::to_string(budget) + " candidate subsets exceed the budget of " +
                    std::to_string(options.subset_budget));

  UfgCatalog catalog(ground);
  std::vector<std::vector<UfgCertificate>> found(pool.size());
  std::vector<std::uint64_t> tested(pool.size(), 0);

  // Task i covers every subset whose smallest member is pool[i].
  detail::parallel_for(pool.size(), options.threads, [&](std::size_t first) {
    Family current{pool[first]};
    auto extend = [&](auto&& self, std::size_t next) -> void {
      for (std::size_t k = next; k < pool.size(); ++k) {
        current.push_back(pool[k]);
        ++tested[first];
        if (auto cert = detail::certify_normalized(current)) found[first].push_back(std::move(*cert));
        if (current.size() < max_size) self(self, k + 1);
        current.pop_back();
      }
    };
    if (max_size >= 2) extend(extend, first + 1);
  });

  for (auto& bucket : found)
    for (auto& cert : bucket) catalog.insert(std::move(cert));
  for (auto t : tested) catalog.stats().families_tested += t;
  catalog.stats().seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return catalog;
}

/// Seeds with every two-element ufg family and grows each cataloged family
/// by one pool element at a time, skipping already visited candidates and
/// pruned extensions. Complete wherever every ufg family of size m >= 3 has
/// a ufg subset of size m - 1.
inline UfgCatalog enumerate_ufg_connected(const Ground& ground, const EnumerationOptions& options = {},
                                         const std::optional<std::vector<Poset>>& premises = std::nullopt) {
  const auto start = std::chrono::steady_clock::now();
  const auto pool = detail::premise_pool(ground, premises, options);
  const auto max_size = detail::effective_max_size(ground, options);
  UfgCatalog catalog(ground);

  auto test_all = [&](const std::vector<Family>& candidates) {
    std::vector<std::optional<UfgCertificate>> results(candidates.size());
    detail::parallel_for(candidates.size(), options.threads,
                         [&](std::size_t i) { results[i] = detail::certify_normalized(candidates[i]); });
    catalog.stats().families_tested += candidates.size();
    std::vector<Family> accepted;
    for (auto& r : results)
      if (r) {
        accepted.push_back(r->family);
        catalog.insert(std::move(*r));
      }
    return accepted;
  };

  std::vector<Family> level;
  if (max_size >= 2) {
    std::vector<Family> seeds;
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j) seeds.push_back(Family{pool[i], pool[j]});
    level = test_all(seeds);
  }

  std::set<FamilyKey> visited;
  for (const auto& f : level) visited.insert(family_key(f));

  while (!level.empty() && level.front().size() < max_size) {
    std::vector<Family> candidates;
    for (const auto& q : level) {
      for (const auto& p : pool) {
        if (family_contains(q, p)) continue;
        if (!candidate_filter(q, p)) {
          ++catalog.stats().candidates_pruned;
          continue;
        }
        Family grown = q;
        grown.insert(std::upper_bound(grown.begin(), grown.end(), p), p);
        if (visited.insert(family_key(grown)).second) candidates.push_back(std::move(grown));
      }
    }
    level = test_all(candidates);
  }

  catalog.stats().seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return catalog;
}

}  // namespace ufgkit
