#pragma once

#include <array>
#include <charconv>
#include <cstddef>
#include <cstdlib>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "ufgkit/bits.hpp"
#include "ufgkit/error.hpp"
#include "ufgkit/ground_set.hpp"
#include "ufgkit/relation.hpp"

namespace ufgkit {

inline constexpr std::size_t kDefaultGroundCap = 6;

/// Largest ground set for which full enumeration of all posets is allowed.
/// UFGKIT_CAP may raise the default (never above the storage limit).
inline std::size_t ground_cap() {
  std::size_t cap = kDefaultGroundCap;
  if (const char* env = std::getenv("UFGKIT_CAP")) {
    std::string_view text(env);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw Error(ErrorKind::InvalidArgument, "UFGKIT_CAP must be an integer, got '" + std::string(text) + "'");
    if (value > cap) cap = value;
  }
  return cap < bits::kMaxItems ? cap : bits::kMaxItems;
}

inline void require_within_cap(std::size_t n, std::size_t cap) {
  if (n > cap)
    throw Error(ErrorKind::GroundSetTooLarge, "ground set of size " + std::to_string(n) + " exceeds enumeration cap " +
                                                  std::to_string(cap));
}

/// Implicit representation of the closure of a family: every poset q with
/// lower <= q <= upper (as pair sets).
class PosetInterval {
 public:
  PosetInterval(Poset lower, BinaryRelation upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    require_same_ground(lower_.ground(), upper_.ground());
    if (!bits::is_subset(lower_.bits(), upper_.bits()))
      throw Error(ErrorKind::InvalidArgument, "interval lower bound is not contained in its upper bound");
  }

  const Poset& lower() const noexcept { return lower_; }
  const BinaryRelation& upper() const noexcept { return upper_; }
  const Ground& ground() const noexcept { return lower_.ground(); }

  /// Pairs left open by the interval: upper \ lower.
  bits::Word free_pairs() const noexcept { return upper_.bits() & ~lower_.bits(); }

 private:
  Poset lower_;
  BinaryRelation upper_;
};

namespace detail {

inline const Ground& family_ground(std::span<const Poset> family) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "family must contain at least one poset");
  const auto& g = family.front().ground();
  for (const auto& p : family) require_same_ground(g, p.ground());
  return g;
}

inline bits::Word intersect_bits(std::span<const Poset> family) noexcept {
  bits::Word m = ~bits::Word{0};
  for (const auto& p : family) m &= p.bits();
  return m;
}

inline bits::Word union_bits(std::span<const Poset> family) noexcept {
  bits::Word m = 0;
  for (const auto& p : family) m |= p.bits();
  return m;
}

// Exclude-first DFS over free pairs in canonical order. `closed` is always
// the transitive closure of the included pairs, so a branch survives iff
// `closed` stays asymmetric and disjoint from `excluded`; that test is exact,
// every leaf is a valid poset and results come out in ascending rank.
template <typename Emit>
bool interval_dfs(const std::array<bits::Word, bits::kMaxPairs>& free, std::size_t count, std::size_t depth,
                  bits::Word closed, bits::Word excluded, std::size_t n, Emit& emit) {
  if (depth == count) return emit(closed);
  const bits::Word b = free[depth];
  if (closed & b) return interval_dfs(free, count, depth + 1, closed, excluded, n, emit);
  if (!interval_dfs(free, count, depth + 1, closed, excluded | b, n, emit)) return false;
  const bits::Word next = bits::transitive_closure(closed | b, n);
  if ((next & excluded) || !bits::is_asymmetric(next, n)) return true;
  return interval_dfs(free, count, depth + 1, next, excluded, n, emit);
}

}  // namespace detail

inline Poset intersect_family(std::span<const Poset> family) {
  const auto& g = detail::family_ground(family);
  return Poset(detail::TrustedPoset{}, g, detail::intersect_bits(family));
}

/// The union need not be a poset, so no validation happens.
inline BinaryRelation union_family(std::span<const Poset> family) {
  const auto& g = detail::family_ground(family);
  return BinaryRelation(g, detail::union_bits(family));
}

inline bool interval_contains(const PosetInterval& iv, const Poset& q) {
  require_same_ground(iv.ground(), q.ground());
  return bits::is_subset(iv.lower().bits(), q.bits()) && bits::is_subset(q.bits(), iv.upper().bits());
}

/// Streams every poset of the interval exactly once in canonical order
/// (lower first). The visitor may return bool; false stops the walk.
/// Returns false iff the visitor stopped early.
template <typename Visitor>
bool for_each_interval_poset(const PosetInterval& iv, Visitor&& visit) {
  const auto n = iv.ground()->size();
  const auto& g = iv.ground();
  std::array<bits::Word, bits::kMaxPairs> free{};
  std::size_t count = 0;
  const bits::Word open = iv.free_pairs();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && (open & bits::bit(i, j))) free[count++] = bits::bit(i, j);

  const bits::Word excluded = bits::off_diagonal(n) & ~iv.upper().bits();
  auto emit = [&](bits::Word m) -> bool {
    Poset p(detail::TrustedPoset{}, g, m);
    if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const Poset&>, bool>) {
      return visit(p);
    } else {
      visit(p);
      return true;
    }
  };
  return detail::interval_dfs(free, count, 0, iv.lower().bits(), excluded, n, emit);
}

inline std::vector<Poset> enumerate_interval_posets(const PosetInterval& iv) {
  std::vector<Poset> out;
  for_each_interval_poset(iv, [&](const Poset& p) { out.push_back(p); });
  return out;
}

inline std::size_t count_interval_posets(const PosetInterval& iv) {
  std::size_t count = 0;
  for_each_interval_poset(iv, [&](const Poset&) { ++count; });
  return count;
}

inline PosetInterval full_interval(const Ground& ground) {
  return PosetInterval(Poset::antichain(ground), BinaryRelation::complete(ground));
}

template <typename Visitor>
bool for_each_poset(const Ground& ground, Visitor&& visit, std::size_t cap = ground_cap()) {
  require_within_cap(ground->size(), cap);
  return for_each_interval_poset(full_interval(ground), std::forward<Visitor>(visit));
}

inline std::vector<Poset> enumerate_all_posets(const Ground& ground, std::size_t cap = ground_cap()) {
  require_within_cap(ground->size(), cap);
  return enumerate_interval_posets(full_interval(ground));
}

}  // namespace ufgkit
