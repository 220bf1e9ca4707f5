#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "ufgkit/interval.hpp"
#include "ufgkit/relation.hpp"

using namespace ufgkit;

namespace {

Ground abc() { return make_ground({"a", "b", "c"}); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected ufgkit::Error";
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(GroundSet, RejectsEmptyAndDuplicates) {
  EXPECT_EQ(kind_of([] { make_ground({}); }), ErrorKind::EmptyGroundSet);
  EXPECT_EQ(kind_of([] { make_ground({"a", "a"}); }), ErrorKind::DuplicateLabel);
  EXPECT_EQ(kind_of([] { make_indexed_ground(9); }), ErrorKind::GroundSetTooLarge);
  auto g = make_indexed_ground(3);
  EXPECT_EQ(g->label(2), "x3");
  EXPECT_EQ(g->index_of("x2"), 1u);
  EXPECT_EQ(kind_of([&] { g->index_of("y"); }), ErrorKind::UnknownLabel);
}

TEST(MakePoset, AcceptsCorrigendumP1) {
  fixtures::Corrigendum c;
  EXPECT_EQ(c.p1.pair_count(), 2u);
  EXPECT_TRUE(c.p1.contains(c.idx("a"), c.idx("b")));
  EXPECT_TRUE(c.p1.contains(c.idx("a1"), c.idx("c1")));
}

TEST(MakePoset, EmptyRelationIsAntichain) {
  auto p = make_poset(make_ground({"a", "b"}), {});
  EXPECT_EQ(p.pair_count(), 0u);
}

TEST(MakePoset, NamesTheViolatingTriple) {
  try {
    make_poset(abc(), {{"a", "b"}, {"b", "c"}});
    FAIL() << "accepted a non-transitive relation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotTransitive);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("(a,b)"), std::string::npos);
    EXPECT_NE(msg.find("(b,c)"), std::string::npos);
    EXPECT_NE(msg.find("(a,c)"), std::string::npos);
  }
}

TEST(MakePoset, ErrorPaths) {
  EXPECT_EQ(kind_of([] { make_poset(abc(), {{"a", "z"}}); }), ErrorKind::UnknownLabel);
  EXPECT_EQ(kind_of([] { make_poset(abc(), {{"a", "a"}}); }), ErrorKind::ReflexivePairRejected);
  try {
    make_poset(abc(), {{"a", "b"}, {"b", "a"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAntisymmetric);
    EXPECT_NE(std::string(e.what()).find("(a,b)"), std::string::npos);
  }
}

TEST(TransitiveClosure, Examples) {
  auto g = abc();
  auto chain = BinaryRelation::from_labels(g, {{"a", "b"}, {"b", "c"}});
  EXPECT_EQ(transitive_closure(chain), BinaryRelation::from_labels(g, {{"a", "b"}, {"b", "c"}, {"a", "c"}}));
  EXPECT_EQ(transitive_closure(BinaryRelation::empty(g)), BinaryRelation::empty(g));
  auto cycle = BinaryRelation::from_labels(g, {{"a", "b"}, {"b", "a"}});
  EXPECT_EQ(transitive_closure(cycle), cycle);
  EXPECT_EQ(kind_of([&] { Poset::validate(transitive_closure(cycle)); }), ErrorKind::NotAntisymmetric);
}

TEST(TransitiveClosure, IdempotentOnRandomRelations) {
  std::mt19937_64 rng(11);
  auto g = make_indexed_ground(5);
  for (int t = 0; t < 500; ++t) {
    auto rel = BinaryRelation(g, rng() & bits::off_diagonal(5));
    auto once = transitive_closure(rel);
    EXPECT_EQ(transitive_closure(once), once);
    EXPECT_TRUE(rel.subset_of(once));
    oracle::Rel r;
    for (auto p : once.pairs()) r.insert(p);
    EXPECT_TRUE(oracle::transitive(r));
  }
}

TEST(Families, CorrigendumIntersectionAndUnion) {
  fixtures::Corrigendum c;
  const auto all = c.all();
  EXPECT_EQ(intersect_family(all).pair_count(), 0u);
  const auto u = union_family(all);
  EXPECT_EQ(u, BinaryRelation::from_labels(c.ground, {{"a", "b"}, {"a1", "c1"}, {"a1", "b1"}, {"b1", "c1"}}));
}

TEST(Families, SingletonIsIdentity) {
  fixtures::Corrigendum c;
  std::vector<Poset> one{c.p1};
  EXPECT_EQ(intersect_family(one), c.p1);
  EXPECT_EQ(union_family(one), c.p1.relation());
}

TEST(Families, ReversedChains) {
  auto g = abc();
  auto up = make_poset(g, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  auto down = make_poset(g, {{"c", "b"}, {"b", "a"}, {"c", "a"}});
  std::vector<Poset> fam{up, down};
  EXPECT_EQ(intersect_family(fam).pair_count(), 0u);

  auto g2 = make_ground({"a", "b"});
  std::vector<Poset> two{make_poset(g2, {{"a", "b"}}), make_poset(g2, {{"b", "a"}})};
  const auto u = union_family(two);
  EXPECT_EQ(u.pair_count(), 2u);
  EXPECT_FALSE(u.is_antisymmetric());
}

TEST(Families, ErrorPaths) {
  std::vector<Poset> none;
  EXPECT_EQ(kind_of([&] { intersect_family(none); }), ErrorKind::EmptyFamily);
  EXPECT_EQ(kind_of([&] { union_family(none); }), ErrorKind::EmptyFamily);
  std::vector<Poset> mixed{Poset::antichain(abc()), Poset::antichain(make_ground({"a", "b"}))};
  EXPECT_EQ(kind_of([&] { intersect_family(mixed); }), ErrorKind::MixedGroundSets);
  EXPECT_EQ(kind_of([&] { union_family(mixed); }), ErrorKind::MixedGroundSets);
}

TEST(Families, EqualLabelGroundsAreCompatible) {
  std::vector<Poset> fam{Poset::antichain(abc()), make_poset(abc(), {{"a", "b"}})};
  EXPECT_EQ(union_family(fam).pair_count(), 1u);
}

TEST(Interval, Containment) {
  fixtures::Corrigendum c;
  const auto all = c.all();
  PosetInterval iv(intersect_family(all), union_family(all));
  EXPECT_TRUE(interval_contains(iv, c.q));

  std::vector<Poset> two{c.p1, c.p2};
  PosetInterval iv2(intersect_family(two), union_family(two));
  EXPECT_FALSE(interval_contains(iv2, c.q));

  PosetInterval point(c.p1, c.p1.relation());
  EXPECT_TRUE(interval_contains(point, c.p1));
  EXPECT_EQ(kind_of([&] { interval_contains(point, Poset::antichain(abc())); }), ErrorKind::MixedGroundSets);
}

TEST(Interval, RejectsInvertedBounds) {
  auto g = abc();
  EXPECT_EQ(kind_of([&] { PosetInterval(make_poset(g, {{"a", "b"}}), BinaryRelation::empty(g)); }),
            ErrorKind::InvalidArgument);
}

TEST(Interval, DegenerateIntervalYieldsItsPoint) {
  fixtures::Corrigendum c;
  const auto got = enumerate_interval_posets(PosetInterval(c.p1, c.p1.relation()));
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got.front(), c.p1);
}

TEST(Interval, CorrigendumClosureContainsQ) {
  fixtures::Corrigendum c;
  const auto all = c.all();
  const auto got = enumerate_interval_posets(PosetInterval(intersect_family(all), union_family(all)));
  EXPECT_NE(std::find(got.begin(), got.end(), c.q), got.end());
  EXPECT_EQ(got.front(), intersect_family(all));
}

TEST(Interval, FullIntervalOnThreeItemsMatchesBruteForce) {
  auto g = make_indexed_ground(3);
  const auto got = enumerate_interval_posets(full_interval(g));
  EXPECT_EQ(got.size(), 19u);
  const auto expected = oracle::all_posets(3);
  std::set<oracle::Rel> a(expected.begin(), expected.end());
  const auto rels = oracle::to_rels(got);
  std::set<oracle::Rel> b(rels.begin(), rels.end());
  EXPECT_EQ(a, b);
}

// Every yielded poset lies in the interval, the stream is duplicate-free,
// ascending in canonical order, and equals the brute-force filter.
TEST(Interval, RandomIntervalsAgreeWithBruteForce) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 2; n <= 4; ++n) {
    auto g = make_indexed_ground(n);
    const auto universe = enumerate_all_posets(g);
    for (int t = 0; t < 60; ++t) {
      const auto& lo = universe[rng() % universe.size()];
      const auto up = BinaryRelation(g, (rng() & bits::off_diagonal(n)) | lo.bits());
      PosetInterval iv(lo, up);
      const auto got = enumerate_interval_posets(iv);
      ASSERT_FALSE(got.empty());
      EXPECT_EQ(got.front(), lo);
      std::set<CanonicalKey> keys;
      for (std::size_t k = 0; k < got.size(); ++k) {
        EXPECT_TRUE(interval_contains(iv, got[k]));
        EXPECT_TRUE(keys.insert(canonical_key(got[k])).second);
        if (k) EXPECT_LT(canonical_key(got[k - 1]), canonical_key(got[k]));
      }
      std::size_t expected = 0;
      for (const auto& r : oracle::all_posets(n)) {
        bool inside = true;
        for (auto pr : lo.pairs()) inside &= r.contains(pr);
        for (auto pr : r) inside &= up.contains(pr.first, pr.second);
        expected += inside;
      }
      EXPECT_EQ(got.size(), expected);
    }
  }
}

TEST(Interval, MonotoneInItsBounds) {
  std::mt19937_64 rng(5);
  auto g = make_indexed_ground(4);
  const auto universe = enumerate_all_posets(g);
  for (int t = 0; t < 100; ++t) {
    const auto& lo2 = universe[rng() % universe.size()];
    const auto up2 = BinaryRelation(g, (rng() & bits::off_diagonal(4)) | lo2.bits());
    // Shrink: add pairs to the lower bound (keeping it a sub-order of the upper one), drop free pairs from the upper.
    std::vector<Poset> lowers;
    for (const auto& p : universe)
      if (bits::is_subset(lo2.bits(), p.bits()) && bits::is_subset(p.bits(), up2.bits())) lowers.push_back(p);
    const auto& lo1 = lowers[rng() % lowers.size()];
    const auto up1 = BinaryRelation(g, (up2.bits() & rng()) | lo1.bits());
    const auto small = enumerate_interval_posets(PosetInterval(lo1, up1));
    const auto big = enumerate_interval_posets(PosetInterval(lo2, up2));
    EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
  }
}

TEST(AllPosets, CountsAgainstBruteForce) {
  const std::size_t expected[] = {0, 1, 3, 19, 219};
  for (std::size_t n = 1; n <= 4; ++n) {
    EXPECT_EQ(enumerate_all_posets(make_indexed_ground(n)).size(), expected[n]);
    EXPECT_EQ(oracle::all_posets(n).size(), expected[n]);
  }
}

TEST(AllPosets, EveryPosetIsClosed) {
  for (const auto& p : enumerate_all_posets(make_indexed_ground(4)))
    EXPECT_EQ(transitive_closure(p.relation()), p.relation());
}

TEST(AllPosets, RespectsCap) {
  EXPECT_EQ(kind_of([] { enumerate_all_posets(make_indexed_ground(7)); }), ErrorKind::GroundSetTooLarge);
  EXPECT_EQ(kind_of([] { enumerate_all_posets(make_indexed_ground(4), 3); }), ErrorKind::GroundSetTooLarge);
}

TEST(AllPosets, EnvironmentRaisesCap) {
  ::setenv("UFGKIT_CAP", "7", 1);
  EXPECT_EQ(ground_cap(), 7u);
  ::setenv("UFGKIT_CAP", "3", 1);
  EXPECT_EQ(ground_cap(), kDefaultGroundCap);
  ::setenv("UFGKIT_CAP", "99", 1);
  EXPECT_EQ(ground_cap(), bits::kMaxItems);
  ::setenv("UFGKIT_CAP", "seven", 1);
  EXPECT_EQ(kind_of([] { ground_cap(); }), ErrorKind::InvalidArgument);
  ::unsetenv("UFGKIT_CAP");
  EXPECT_EQ(ground_cap(), kDefaultGroundCap);
}

TEST(CanonicalKey, Encoding) {
  auto g = make_ground({"a", "b"});
  EXPECT_EQ(canonical_bits(Poset::antichain(g)), "00");
  EXPECT_EQ(canonical_bits(make_poset(g, {{"a", "b"}})), "10");
  EXPECT_EQ(canonical_bits(make_poset(g, {{"b", "a"}})), "01");
  EXPECT_EQ(canonical_key(make_poset(g, {{"a", "b"}})), CanonicalKey{0x80});
}

TEST(CanonicalKey, InjectiveAndOrderConsistent) {
  const auto all = enumerate_all_posets(make_indexed_ground(4));
  std::set<CanonicalKey> keys;
  for (const auto& p : all) EXPECT_TRUE(keys.insert(canonical_key(p)).second);
  for (std::size_t k = 1; k < all.size(); ++k) {
    EXPECT_LT(all[k - 1].rank(), all[k].rank());
    EXPECT_LT(canonical_key(all[k - 1]), canonical_key(all[k]));
  }
}
