#pragma once

// Reference implementations for tests. Everything here works on explicit
// std::set pair lists and never touches the bit-matrix code paths.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "ufgkit/relation.hpp"

namespace oracle {

using Pair = std::pair<std::size_t, std::size_t>;
using Rel = std::set<Pair>;

inline std::vector<Pair> off_diagonal_pairs(std::size_t n) {
  std::vector<Pair> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out.emplace_back(i, j);
  return out;
}

inline bool transitive(const Rel& r) {
  for (auto [a, b] : r)
    for (auto [c, d] : r)
      if (b == c && a != d && !r.contains({a, d})) return false;
  return true;
}

inline bool antisymmetric(const Rel& r) {
  for (auto [a, b] : r)
    if (r.contains({b, a})) return false;
  return true;
}

/// Filters all 2^(N(N-1)) strict relations.
inline std::vector<Rel> all_posets(std::size_t n) {
  const auto pairs = off_diagonal_pairs(n);
  std::vector<Rel> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    Rel r;
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask & (std::uint64_t{1} << k)) r.insert(pairs[k]);
    if (transitive(r) && antisymmetric(r)) out.push_back(std::move(r));
  }
  return out;
}

inline Rel to_rel(const ufgkit::Poset& p) {
  Rel r;
  for (auto pr : p.pairs()) r.insert(pr);
  return r;
}

inline std::vector<Rel> to_rels(const std::vector<ufgkit::Poset>& ps) {
  std::vector<Rel> out;
  for (const auto& p : ps) out.push_back(to_rel(p));
  return out;
}

// Attributes as (is_leq, i, j).
struct Attr {
  bool is_leq;
  std::size_t i, j;
  auto operator<=>(const Attr&) const = default;
};

inline bool has(const Rel& p, const Attr& m) { return m.is_leq == p.contains({m.i, m.j}); }

inline std::set<Attr> psi(const std::vector<Rel>& objs, std::size_t n) {
  std::set<Attr> out;
  for (auto [i, j] : off_diagonal_pairs(n))
    for (bool k : {true, false}) {
      Attr m{k, i, j};
      if (std::all_of(objs.begin(), objs.end(), [&](const Rel& p) { return has(p, m); })) out.insert(m);
    }
  return out;
}

/// Phi(Psi(S)) over the brute-force poset list.
inline std::set<Rel> closure(const std::vector<Rel>& family, std::size_t n, const std::vector<Rel>& universe) {
  std::set<Rel> out;
  if (family.empty()) return out;
  const auto intent = psi(family, n);
  for (const auto& p : universe)
    if (std::all_of(intent.begin(), intent.end(), [&](const Attr& m) { return has(p, m); })) out.insert(p);
  return out;
}

/// (C1) and (C2) straight from the definitions: gamma(S) strictly larger
/// than S, and the closures of all proper subsets do not cover gamma(S).
inline bool is_ufg(const std::vector<Rel>& family, std::size_t n, const std::vector<Rel>& universe) {
  const std::set<Rel> members(family.begin(), family.end());
  if (members.size() != family.size() || family.empty()) return false;
  const auto hull = closure(family, n, universe);
  if (hull.size() <= members.size()) return false;
  std::set<Rel> covered;
  const std::uint32_t full = (std::uint32_t{1} << family.size()) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::vector<Rel> sub;
    for (std::size_t k = 0; k < family.size(); ++k)
      if (mask & (std::uint32_t{1} << k)) sub.push_back(family[k]);
    for (const auto& p : closure(sub, n, universe)) covered.insert(p);
  }
  return covered != hull;
}

/// Restricted (or unrestricted) distinguishing attributes of family[index].
inline std::set<Attr> distinguishing(const std::vector<Rel>& family, std::size_t index, const Rel* q, std::size_t n) {
  std::set<Attr> out;
  for (auto [i, j] : off_diagonal_pairs(n))
    for (bool k : {true, false}) {
      Attr m{k, i, j};
      if (has(family[index], m)) continue;
      if (q && has(*q, m)) continue;
      bool all_others = true;
      for (std::size_t r = 0; r < family.size(); ++r)
        if (r != index && !has(family[r], m)) all_others = false;
      if (all_others) out.insert(m);
    }
  return out;
}

}  // namespace oracle
