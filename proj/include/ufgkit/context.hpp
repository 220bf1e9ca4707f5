#pragma once

// The formal context on posets: objects are posets on a ground set,
// attributes are the scaled statements "x_i <= x_j" (Leq) and "x_i !<= x_j"
// (Nleq) for i != j. A poset has Leq(i,j) iff (i,j) is one of its pairs and
// Nleq(i,j) iff it is not.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ufgkit/bits.hpp"
#include "ufgkit/error.hpp"
#include "ufgkit/ground_set.hpp"
#include "ufgkit/interval.hpp"
#include "ufgkit/relation.hpp"

namespace ufgkit {

enum class AttributeKind : std::uint8_t { Leq, Nleq };

struct Attribute {
  AttributeKind kind;
  std::uint8_t i;
  std::uint8_t j;

  friend auto operator<=>(const Attribute&, const Attribute&) = default;
};

inline Attribute make_attribute(AttributeKind kind, std::size_t i, std::size_t j, const GroundSet& ground) {
  if (i >= ground.size() || j >= ground.size())
    throw Error(ErrorKind::IndexOutOfRange, "attribute index beyond ground set");
  if (i == j) throw Error(ErrorKind::ReflexivePairRejected, "attributes need two distinct items");
  return Attribute{kind, static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)};
}

inline Attribute leq(std::size_t i, std::size_t j, const GroundSet& g) { return make_attribute(AttributeKind::Leq, i, j, g); }
inline Attribute nleq(std::size_t i, std::size_t j, const GroundSet& g) {
  return make_attribute(AttributeKind::Nleq, i, j, g);
}

/// Text form `leq(a,b)` / `nleq(a,b)` using item labels.
inline std::string to_text(const Attribute& m, const GroundSet& ground) {
  return std::string(m.kind == AttributeKind::Leq ? "leq(" : "nleq(") + ground.label(m.i) + "," + ground.label(m.j) + ")";
}

inline Attribute parse_attribute(const std::string& text, const GroundSet& ground) {
  AttributeKind kind;
  std::size_t open;
  if (text.rfind("leq(", 0) == 0) {
    kind = AttributeKind::Leq;
    open = 4;
  } else if (text.rfind("nleq(", 0) == 0) {
    kind = AttributeKind::Nleq;
    open = 5;
  } else {
    throw Error(ErrorKind::Parse, "attribute '" + text + "' must start with leq( or nleq(");
  }
  const auto comma = text.find(',', open);
  if (comma == std::string::npos || text.back() != ')' || text.size() < comma + 2)
    throw Error(ErrorKind::Parse, "malformed attribute '" + text + "'");
  const auto a = text.substr(open, comma - open);
  const auto b = text.substr(comma + 1, text.size() - comma - 2);
  return make_attribute(kind, ground.index_of(a), ground.index_of(b), ground);
}

/// A set of attributes, stored as one pair mask per kind.
class AttributeSet {
 public:
  AttributeSet() = default;
  AttributeSet(bits::Word leq_pairs, bits::Word nleq_pairs) : leq_(leq_pairs), nleq_(nleq_pairs) {}

  static AttributeSet all(std::size_t n) { return {bits::off_diagonal(n), bits::off_diagonal(n)}; }

  void insert(const Attribute& m) noexcept { mask(m.kind) |= bits::bit(m.i, m.j); }
  bool contains(const Attribute& m) const noexcept { return mask(m.kind) & bits::bit(m.i, m.j); }

  bits::Word leq_pairs() const noexcept { return leq_; }
  bits::Word nleq_pairs() const noexcept { return nleq_; }

  std::size_t size() const noexcept { return bits::popcount(leq_) + bits::popcount(nleq_); }
  bool empty() const noexcept { return leq_ == 0 && nleq_ == 0; }

  bool subset_of(const AttributeSet& o) const noexcept {
    return bits::is_subset(leq_, o.leq_) && bits::is_subset(nleq_, o.nleq_);
  }

  AttributeSet only(AttributeKind kind) const noexcept {
    return kind == AttributeKind::Leq ? AttributeSet(leq_, 0) : AttributeSet(0, nleq_);
  }

  friend AttributeSet operator|(const AttributeSet& a, const AttributeSet& b) noexcept {
    return {a.leq_ | b.leq_, a.nleq_ | b.nleq_};
  }
  friend AttributeSet operator&(const AttributeSet& a, const AttributeSet& b) noexcept {
    return {a.leq_ & b.leq_, a.nleq_ & b.nleq_};
  }
  friend bool operator==(const AttributeSet&, const AttributeSet&) = default;

  /// Leq attributes first, each kind in canonical pair order.
  std::vector<Attribute> to_vector() const {
    std::vector<Attribute> out;
    for (auto kind : {AttributeKind::Leq, AttributeKind::Nleq}) {
      const auto m = kind == AttributeKind::Leq ? leq_ : nleq_;
      for (std::size_t i = 0; i < bits::kMaxItems; ++i)
        for (std::size_t j = 0; j < bits::kMaxItems; ++j)
          if (i != j && (m & bits::bit(i, j)))
            out.push_back(Attribute{kind, static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)});
    }
    return out;
  }

 private:
  bits::Word& mask(AttributeKind k) noexcept { return k == AttributeKind::Leq ? leq_ : nleq_; }
  bits::Word mask(AttributeKind k) const noexcept { return k == AttributeKind::Leq ? leq_ : nleq_; }

  bits::Word leq_ = 0;
  bits::Word nleq_ = 0;
};

/// Every attribute of the context, Leq block then Nleq block.
inline std::vector<Attribute> all_attributes(const GroundSet& ground) {
  return AttributeSet::all(ground.size()).to_vector();
}

inline bool incidence(const Poset& p, const Attribute& m) {
  if (m.i >= p.n() || m.j >= p.n() || m.i == m.j)
    throw Error(ErrorKind::IndexOutOfRange, "attribute does not belong to this ground set");
  const bool has_pair = p.contains(m.i, m.j);
  return m.kind == AttributeKind::Leq ? has_pair : !has_pair;
}

/// Row of the context for one object.
inline AttributeSet attribute_row(const Poset& p) {
  const auto all = bits::off_diagonal(p.n());
  return {p.bits(), all & ~p.bits()};
}

/// Objects are either every poset on the ground set or an explicit sample.
class FormalContext {
 public:
  static FormalContext all_posets(Ground ground) { return FormalContext(std::move(ground), std::nullopt); }

  static FormalContext sample(Ground ground, std::vector<Poset> objects) {
    for (const auto& p : objects) require_same_ground(ground, p.ground());
    std::vector<Poset> sorted = objects;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::InvalidArgument, "explicit context objects must be pairwise distinct");
    return FormalContext(std::move(ground), std::move(objects));
  }

  const Ground& ground() const noexcept { return ground_; }
  bool is_all_posets() const noexcept { return !objects_.has_value(); }
  const std::vector<Poset>& objects() const {
    if (!objects_) throw Error(ErrorKind::InvalidArgument, "context over all posets has no explicit object list");
    return *objects_;
  }

  bool contains_object(const Poset& p) const {
    if (!same_ground(ground_, p.ground())) return false;
    if (!objects_) return true;
    return std::find(objects_->begin(), objects_->end(), p) != objects_->end();
  }

 private:
  FormalContext(Ground ground, std::optional<std::vector<Poset>> objects)
      : ground_(std::move(ground)), objects_(std::move(objects)) {}

  Ground ground_;
  std::optional<std::vector<Poset>> objects_;
};

/// Common attributes of a set of objects; psi of the empty set is every attribute.
inline AttributeSet psi(std::span<const Poset> objects, const FormalContext& ctx) {
  const auto& g = *ctx.ground();
  AttributeSet out;
  for (const auto& p : objects)
    if (!ctx.contains_object(p)) throw Error(ErrorKind::ObjectNotInContext, to_text(p) + " is not an object of the context");
  for (const auto& m : all_attributes(g)) {
    bool shared = true;
    for (const auto& p : objects)
      if (!incidence(p, m)) {
        shared = false;
        break;
      }
    if (shared) out.insert(m);
  }
  return out;
}

/// Lazy extent of an attribute set: Leq attributes become required pairs,
/// Nleq attributes forbidden pairs.
class Extent {
 public:
  Extent(const FormalContext& ctx, const AttributeSet& attributes)
      : ctx_(&ctx), required_(attributes.leq_pairs()), forbidden_(attributes.nleq_pairs()) {}

  bits::Word required_pairs() const noexcept { return required_; }
  bits::Word forbidden_pairs() const noexcept { return forbidden_; }

  /// False iff some pair is both required and forbidden.
  bool consistent() const noexcept { return (required_ & forbidden_) == 0; }

  void check_consistent() const {
    if (!consistent()) throw Error(ErrorKind::Inconsistent, "attribute set both requires and forbids a pair");
  }

  bool contains(const Poset& p) const {
    return ctx_->contains_object(p) && bits::is_subset(required_, p.bits()) && (p.bits() & forbidden_) == 0;
  }

  /// Explicit object list in canonical order; empty when inconsistent.
  std::vector<Poset> materialize(std::size_t cap = ground_cap()) const {
    std::vector<Poset> out;
    if (!ctx_->is_all_posets()) {
      for (const auto& p : ctx_->objects())
        if (contains(p)) out.push_back(p);
      std::sort(out.begin(), out.end());
      return out;
    }
    const auto& g = ctx_->ground();
    const auto n = g->size();
    require_within_cap(n, cap);
    if (!consistent()) return out;
    const auto lower = bits::transitive_closure(required_, n);
    if ((lower & forbidden_) || !bits::is_asymmetric(lower, n)) return out;
    PosetInterval iv(Poset(detail::TrustedPoset{}, g, lower),
                     BinaryRelation(g, bits::off_diagonal(n) & ~forbidden_));
    return enumerate_interval_posets(iv);
  }

 private:
  const FormalContext* ctx_;
  bits::Word required_;
  bits::Word forbidden_;
};

inline Extent phi(const AttributeSet& attributes, const FormalContext& ctx) {
  const auto all = AttributeSet::all(ctx.ground()->size());
  if (!attributes.subset_of(all)) throw Error(ErrorKind::IndexOutOfRange, "attribute beyond ground set");
  return Extent(ctx, attributes);
}

/// Closure of a family as the interval [intersection, union].
inline PosetInterval gamma_interval(std::span<const Poset> family) {
  return PosetInterval(intersect_family(family), union_family(family));
}

inline bool gamma_contains(std::span<const Poset> family, const Poset& q) {
  return interval_contains(gamma_interval(family), q);
}

/// phi(psi(S)) evaluated attribute by attribute over every poset; the
/// independent check for the interval shortcut.
inline std::vector<Poset> gamma_explicit(std::span<const Poset> family, const FormalContext& ctx,
                                         std::size_t cap = ground_cap()) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "closure of an empty family");
  if (!ctx.is_all_posets()) throw Error(ErrorKind::InvalidArgument, "explicit closure needs the all-posets context");
  detail::family_ground(family);
  const auto intent = psi(family, ctx).to_vector();
  std::vector<Poset> out;
  for_each_poset(
      ctx.ground(),
      [&](const Poset& p) {
        for (const auto& m : intent)
          if (!incidence(p, m)) return;
        out.push_back(p);
      },
      cap);
  return out;
}

/// Y -> Z holds iff gamma(Y) contains gamma(Z). For nonempty Z this is
/// interval inclusion: lower(Y) <= lower(Z) and upper(Z) <= upper(Y).
inline bool implication_valid(std::span<const Poset> premise, std::span<const Poset> conclusion) {
  if (premise.empty()) throw Error(ErrorKind::EmptyFamily, "implication premise must be nonempty");
  const auto y = gamma_interval(premise);
  if (conclusion.empty()) return true;
  const auto z = gamma_interval(conclusion);
  require_same_ground(y.ground(), z.ground());
  return bits::is_subset(y.lower().bits(), z.lower().bits()) && bits::is_subset(z.upper().bits(), y.upper().bits());
}

/// Same decision through materialized phi(psi(.)); throws std::logic_error on disagreement when cross_check is set.
inline bool implication_valid(std::span<const Poset> premise, std::span<const Poset> conclusion,
                              const FormalContext& ctx, bool cross_check) {
  const bool fast = implication_valid(premise, conclusion);
  if (cross_check && !conclusion.empty()) {
    const auto gy = gamma_explicit(premise, ctx);
    const auto gz = gamma_explicit(conclusion, ctx);
    const bool slow = std::includes(gy.begin(), gy.end(), gz.begin(), gz.end());
    if (slow != fast) throw std::logic_error("implication: interval and explicit closures disagree");
  }
  return fast;
}

struct DistinguishingSet {
  Poset member;
  AttributeSet attributes;
  std::optional<Poset> restriction;
};

namespace detail {

// Attributes lacked by family[index] and held by every other position;
// with a restriction q, additionally lacked by q.
inline AttributeSet distinguishing_at(std::span<const Poset> family, std::size_t index, const Poset* restriction) {
  const auto n = family[index].n();
  const auto all = bits::off_diagonal(n);
  bits::Word others_and = all;
  bits::Word others_or = 0;
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (k == index) continue;
    others_and &= family[k].bits();
    others_or |= family[k].bits();
  }
  const auto x = family[index].bits();
  bits::Word leq_pairs = others_and & ~x;
  bits::Word nleq_pairs = x & ~others_or & all;
  if (restriction) {
    leq_pairs &= ~restriction->bits();
    nleq_pairs &= restriction->bits();
  }
  return {leq_pairs, nleq_pairs};
}

inline void require_distinguishable(std::span<const Poset> family) {
  if (family.size() < 2) throw Error(ErrorKind::FamilyTooSmall, "distinguishing attributes need at least two members");
  detail::family_ground(family);
}

}  // namespace detail

/// Attributes separating x from the rest of the family, optionally restricted to q.
/// Removes only one occurrence of x, so a duplicated member has no distinguishing attributes.
inline DistinguishingSet distinguishing(const Poset& x, std::span<const Poset> family,
                                        const std::optional<Poset>& restriction = std::nullopt) {
  detail::require_distinguishable(family);
  require_same_ground(x.ground(), family.front().ground());
  if (restriction) require_same_ground(x.ground(), restriction->ground());
  const auto it = std::find(family.begin(), family.end(), x);
  if (it == family.end()) throw Error(ErrorKind::MemberNotInFamily, to_text(x) + " is not a member of the family");
  const auto index = static_cast<std::size_t>(it - family.begin());
  return {x, detail::distinguishing_at(family, index, restriction ? &*restriction : nullptr), restriction};
}

struct DistinguishingPartition {
  AttributeSet leq;
  AttributeSet nleq;
};

/// Union of the restricted distinguishing sets of all members, split by kind.
inline DistinguishingPartition partition_distinguishing(std::span<const Poset> family, const Poset& q) {
  detail::require_distinguishable(family);
  require_same_ground(family.front().ground(), q.ground());
  AttributeSet all;
  for (std::size_t k = 0; k < family.size(); ++k) all = all | detail::distinguishing_at(family, k, &q);
  return {all.only(AttributeKind::Leq), all.only(AttributeKind::Nleq)};
}

}  // namespace ufgkit
