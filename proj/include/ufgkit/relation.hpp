#pragma once

// Strict relations and posets on a GroundSet.
//
// Posets are stored by their irreflexive part: the reflexive order p of the
// usual definition corresponds to p \ {(x, x)}, and adding the diagonal back
// recovers it. Under this convention antisymmetry is plain asymmetry.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ufgkit/bits.hpp"
#include "ufgkit/error.hpp"
#include "ufgkit/ground_set.hpp"

namespace ufgkit {

using IndexPair = std::pair<std::size_t, std::size_t>;
using LabelPair = std::pair<std::string, std::string>;

class BinaryRelation {
 public:
  BinaryRelation(Ground ground, bits::Word pairs) : ground_(std::move(ground)), pairs_(pairs) {
    if (!ground_) throw Error(ErrorKind::InvalidArgument, "relation without ground set");
    const auto n = ground_->size();
    if (pairs_ & bits::diagonal(n))
      throw Error(ErrorKind::ReflexivePairRejected, "diagonal pairs are implicit and may not be stored");
    if (pairs_ & ~bits::off_diagonal(n)) throw Error(ErrorKind::IndexOutOfRange, "pair index beyond ground set");
  }

  static BinaryRelation empty(Ground ground) { return BinaryRelation(std::move(ground), 0); }

  static BinaryRelation complete(Ground ground) {
    const auto n = ground->size();
    return BinaryRelation(std::move(ground), bits::off_diagonal(n));
  }

  static BinaryRelation from_indices(Ground ground, const std::vector<IndexPair>& pairs) {
    const auto n = ground->size();
    bits::Word m = 0;
    for (auto [i, j] : pairs) {
      if (i >= n || j >= n)
        throw Error(ErrorKind::IndexOutOfRange,
                    "pair (" + std::to_string(i) + "," + std::to_string(j) + ") beyond ground set");
      if (i == j) throw Error(ErrorKind::ReflexivePairRejected, "pair (" + ground->label(i) + "," + ground->label(i) + ")");
      m |= bits::bit(i, j);
    }
    return BinaryRelation(std::move(ground), m);
  }

  static BinaryRelation from_labels(Ground ground, const std::vector<LabelPair>& pairs) {
    std::vector<IndexPair> idx;
    idx.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
      const auto i = ground->index_of(a);
      const auto j = ground->index_of(b);
      if (i == j) throw Error(ErrorKind::ReflexivePairRejected, "pair (" + a + "," + b + ")");
      idx.emplace_back(i, j);
    }
    return from_indices(std::move(ground), idx);
  }

  const Ground& ground() const noexcept { return ground_; }
  std::size_t n() const noexcept { return ground_->size(); }
  bits::Word bits() const noexcept { return pairs_; }

  bool contains(std::size_t i, std::size_t j) const noexcept {
    return i < n() && j < n() && i != j && (pairs_ & bits::bit(i, j));
  }

  std::size_t pair_count() const noexcept { return bits::popcount(pairs_); }
  bool empty() const noexcept { return pairs_ == 0; }

  /// Stored pairs in canonical (row-major) order.
  std::vector<IndexPair> pairs() const {
    std::vector<IndexPair> out;
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j)
        if (i != j && (pairs_ & bits::bit(i, j))) out.emplace_back(i, j);
    return out;
  }

  bool subset_of(const BinaryRelation& other) const {
    require_same_ground(ground_, other.ground_);
    return bits::is_subset(pairs_, other.pairs_);
  }

  bool is_transitive() const noexcept { return bits::is_transitive(pairs_, n()); }
  bool is_antisymmetric() const noexcept { return bits::is_asymmetric(pairs_, n()); }

  std::uint64_t rank() const noexcept { return bits::rank(pairs_, n()); }

  friend bool operator==(const BinaryRelation& a, const BinaryRelation& b) {
    return a.pairs_ == b.pairs_ && same_ground(a.ground_, b.ground_);
  }

 private:
  Ground ground_;
  bits::Word pairs_;
};

namespace detail {
struct TrustedPoset {
  explicit TrustedPoset() = default;
};
}  // namespace detail

/// A validated strict partial order. Immutable; cheap to copy.
class Poset {
 public:
  /// Rejects (never repairs) relations that are not transitive or not antisymmetric.
  static Poset validate(BinaryRelation rel) {
    const auto& g = *rel.ground();
    const auto n = g.size();
    const auto m = rel.bits();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || !(m & bits::bit(i, j))) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i || k == j || !(m & bits::bit(j, k))) continue;
          if (!(m & bits::bit(i, k)))
            throw Error(ErrorKind::NotTransitive, "(" + g.label(i) + "," + g.label(j) + ") and (" + g.label(j) + "," +
                                                      g.label(k) + ") present without (" + g.label(i) + "," +
                                                      g.label(k) + ")");
        }
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if ((m & bits::bit(i, j)) && (m & bits::bit(j, i)))
          throw Error(ErrorKind::NotAntisymmetric,
                      "both (" + g.label(i) + "," + g.label(j) + ") and (" + g.label(j) + "," + g.label(i) + ")");
    return Poset(detail::TrustedPoset{}, std::move(rel));
  }

  static Poset antichain(Ground ground) { return Poset(detail::TrustedPoset{}, BinaryRelation::empty(std::move(ground))); }

  /// For enumerators that construct valid orders by design.
  Poset(detail::TrustedPoset, BinaryRelation rel) : rel_(std::move(rel)), rank_(rel_.rank()) {}
  Poset(detail::TrustedPoset tag, Ground ground, bits::Word pairs) : Poset(tag, BinaryRelation(std::move(ground), pairs)) {}

  const BinaryRelation& relation() const noexcept { return rel_; }
  const Ground& ground() const noexcept { return rel_.ground(); }
  std::size_t n() const noexcept { return rel_.n(); }
  bits::Word bits() const noexcept { return rel_.bits(); }
  bool contains(std::size_t i, std::size_t j) const noexcept { return rel_.contains(i, j); }
  std::vector<IndexPair> pairs() const { return rel_.pairs(); }
  std::size_t pair_count() const noexcept { return rel_.pair_count(); }

  /// Position in canonical order: the canonical key read as an integer.
  std::uint64_t rank() const noexcept { return rank_; }

  friend bool operator==(const Poset& a, const Poset& b) { return a.rel_ == b.rel_; }
  friend std::strong_ordering operator<=>(const Poset& a, const Poset& b) noexcept { return a.rank_ <=> b.rank_; }

 private:
  BinaryRelation rel_;
  std::uint64_t rank_;
};

inline Poset make_poset(const Ground& ground, const std::vector<LabelPair>& pairs) {
  return Poset::validate(BinaryRelation::from_labels(ground, pairs));
}

inline BinaryRelation transitive_closure(const BinaryRelation& rel) {
  return BinaryRelation(rel.ground(), bits::transitive_closure(rel.bits(), rel.n()));
}

using CanonicalKey = std::vector<std::uint8_t>;

/// Row-major bits of the strict adjacency matrix over pairs (i, j), i != j,
/// packed most significant bit first; trailing bits of the last byte are zero.
inline CanonicalKey canonical_key(const Poset& p) {
  const auto n = p.n();
  CanonicalKey key((n * (n - 1) + 7) / 8, 0);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (p.contains(i, j)) key[pos / 8] |= static_cast<std::uint8_t>(0x80u >> (pos % 8));
      ++pos;
    }
  return key;
}

/// The canonical key as a '0'/'1' string of length N(N-1).
inline std::string canonical_bits(const Poset& p) {
  std::string out;
  const auto n = p.n();
  out.reserve(n * (n - 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.push_back(p.contains(i, j) ? '1' : '0');
  return out;
}

/// Human-readable pair listing, e.g. {(a,b), (a1,c1)}.
inline std::string to_text(const BinaryRelation& rel) {
  std::string out = "{";
  bool first = true;
  for (auto [i, j] : rel.pairs()) {
    if (!first) out += ", ";
    first = false;
    out += "(" + rel.ground()->label(i) + "," + rel.ground()->label(j) + ")";
  }
  return out + "}";
}

inline std::string to_text(const Poset& p) { return to_text(p.relation()); }

}  // namespace ufgkit
