#pragma once

// Word-parallel primitives on strict adjacency matrices.
//
// A relation on at most kMaxItems items is one 64-bit word. Row i occupies
// bits [8i, 8i+8) and bit 8i+j is set iff (i, j) is in the relation. The
// diagonal is never set in a stored strict relation.

#include <bit>
#include <cstddef>
#include <cstdint>

namespace ufgkit::bits {

using Word = std::uint64_t;

inline constexpr std::size_t kMaxItems = 8;
inline constexpr std::size_t kMaxPairs = kMaxItems * (kMaxItems - 1);

constexpr Word bit(std::size_t i, std::size_t j) noexcept {
  return Word{1} << (i * kMaxItems + j);
}

constexpr Word row(Word m, std::size_t i) noexcept {
  return (m >> (i * kMaxItems)) & Word{0xFF};
}

constexpr Word diagonal(std::size_t n) noexcept {
  Word d = 0;
  for (std::size_t i = 0; i < n; ++i) d |= bit(i, i);
  return d;
}

/// All off-diagonal pairs of an n-item ground set.
constexpr Word off_diagonal(std::size_t n) noexcept {
  Word m = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) m |= bit(i, j);
  return m;
}

constexpr Word transpose(Word m, std::size_t n) noexcept {
  Word t = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m & bit(i, j)) t |= bit(j, i);
  return t;
}

/// Warshall on rows; the diagonal is masked out of the result.
constexpr Word transitive_closure(Word m, std::size_t n) noexcept {
  for (std::size_t k = 0; k < n; ++k) {
    const Word row_k = row(m, k);
    for (std::size_t i = 0; i < n; ++i)
      if (m & bit(i, k)) m |= row_k << (i * kMaxItems);
  }
  return m & ~diagonal(n);
}

constexpr bool is_transitive(Word m, std::size_t n) noexcept {
  return transitive_closure(m, n) == m;
}

constexpr bool is_asymmetric(Word m, std::size_t n) noexcept {
  return (m & transpose(m, n)) == 0;
}

constexpr bool is_subset(Word a, Word b) noexcept { return (a & ~b) == 0; }

constexpr std::size_t popcount(Word m) noexcept {
  return static_cast<std::size_t>(std::popcount(m));
}

/// Row-major bit string over the off-diagonal pairs read as an integer,
/// first pair most significant. Ordering by rank equals lexicographic
/// ordering of the canonical key.
constexpr std::uint64_t rank(Word m, std::size_t n) noexcept {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) r = (r << 1) | ((m & bit(i, j)) ? 1u : 0u);
  return r;
}

}  // namespace ufgkit::bits
