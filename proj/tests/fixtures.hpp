#pragma once

#include <vector>

#include "ufgkit/ufgkit.hpp"

namespace fixtures {

struct Corrigendum {
  ufgkit::Ground ground = ufgkit::make_ground({"a", "b", "a1", "b1", "c1"});
  ufgkit::Poset p1 = ufgkit::make_poset(ground, {{"a", "b"}, {"a1", "c1"}});
  ufgkit::Poset p2 = ufgkit::make_poset(ground, {{"a1", "b1"}});
  ufgkit::Poset p3 = ufgkit::make_poset(ground, {{"b1", "c1"}});
  ufgkit::Poset q = ufgkit::make_poset(ground, {{"a", "b"}, {"a1", "b1"}, {"b1", "c1"}, {"a1", "c1"}});

  std::vector<ufgkit::Poset> all() const { return {p1, p2, p3}; }

  std::size_t idx(const char* label) const { return ground->index_of(label); }
  ufgkit::Attribute nleq(const char* a, const char* b) const { return ufgkit::nleq(idx(a), idx(b), *ground); }
  ufgkit::Attribute leq(const char* a, const char* b) const { return ufgkit::leq(idx(a), idx(b), *ground); }
};

/// C(n, k) index subsets of [0, n) with 1 <= k <= max_k, in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets_up_to(std::size_t n, std::size_t max_k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t next) -> void {
    for (std::size_t k = next; k < n; ++k) {
      cur.push_back(k);
      out.push_back(cur);
      if (cur.size() < max_k) self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

inline std::vector<ufgkit::Poset> pick(const std::vector<ufgkit::Poset>& pool, const std::vector<std::size_t>& idx) {
  std::vector<ufgkit::Poset> out;
  for (auto i : idx) out.push_back(pool[i]);
  return out;
}

}  // namespace fixtures
