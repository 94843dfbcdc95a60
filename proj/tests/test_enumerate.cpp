#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "catlab/corpus.hpp"
#include "catlab/enumerate.hpp"

using namespace catlab;

TEST_CASE("category enumeration hits the known one-object counts") {
  // monoids up to iso: order 1: 1, order 2: 2, order 3: 7, order 4: 35
  IterationGuard guard(50'000'000);
  auto all = enumerate_categories(1, 4, guard);
  int by_order[5] = {0, 0, 0, 0, 0};
  for (const auto& c : all)
    if (c.num_objects() == 1) by_order[c.num_morphisms()]++;
  CHECK(by_order[1] == 1);
  CHECK(by_order[2] == 2);
  CHECK(by_order[3] == 7);
  CHECK(by_order[4] == 35);
  // plus the empty category
  CHECK(all.size() == 1u + 1 + 2 + 7 + 35);
}

TEST_CASE("two-object enumeration contains the standard shapes exactly once") {
  IterationGuard guard(50'000'000);
  auto all = enumerate_categories(2, 4, guard);
  auto count_iso = [&](const FinCategory& c) {
    int n = 0;
    for (const auto& x : all)
      if (x.num_objects() == c.num_objects() && x.num_morphisms() == c.num_morphisms() &&
          categories_isomorphic(x, c))
        ++n;
    return n;
  };
  CHECK(count_iso(cats::discrete(2)) == 1);
  CHECK(count_iso(cats::walking_arrow()) == 1);
  CHECK(count_iso(cats::parallel_pair()) == 1);
  CHECK(count_iso(cats::walking_iso()) == 1);
  // all distinct up to iso by construction
  std::set<std::string> keys;
  for (const auto& c : all) CHECK(keys.insert(c.canonical_key()).second);
}

TEST_CASE("functor enumeration: counts against hand calculations") {
  IterationGuard guard(10'000'000);
  // functors from the walking arrow into the walking arrow: pairs of
  // comparable objects in the poset 2: (a,a),(a,b),(b,b) -> 3
  int count = 0;
  enumerate_functors(cats::walking_arrow(), cats::walking_arrow(), guard,
                     [&](const FinFunctor&) {
                       ++count;
                       return true;
                     });
  CHECK(count == 3);
  // functors discrete2 -> discrete3: 9 object choices
  count = 0;
  enumerate_functors(cats::discrete(2), cats::discrete(3), guard, [&](const FinFunctor&) {
    ++count;
    return true;
  });
  CHECK(count == 9);
}

TEST_CASE("set functor enumeration is canonical and complete") {
  IterationGuard guard(10'000'000);
  auto base = std::make_shared<const FinCategory>(cats::walking_arrow());
  int count = 0;
  std::vector<std::vector<int>> carrier_seq;
  enumerate_set_functors(base, Variance::Covariant, 2, guard, [&](const SetFunctor& f) {
    ++count;
    carrier_seq.push_back(f.carriers());
    return true;
  });
  // carriers (i,j) with i,j <= 2 and one table each for u, j^i of them
  // (none when i > 0 = j): 1+1+1 + 0+1+2 + 0+1+4 = 11
  CHECK(count == 11);
  CHECK(std::is_sorted(carrier_seq.begin(), carrier_seq.end()));
}

TEST_CASE("random set functors validate") {
  Rng rng(42);
  auto base = std::make_shared<const FinCategory>(cats::reflexive_pair());
  int ok = 0;
  for (int i = 0; i < 20; ++i)
    if (random_set_functor(base, Variance::Contravariant, 2, rng)) ++ok;
  CHECK(ok > 0);
}

TEST_CASE("corpus is deterministic and within bounds") {
  auto c1 = category_corpus(4);
  auto c2 = category_corpus(4);
  REQUIRE(c1.size() == c2.size());
  for (size_t i = 0; i < c1.size(); ++i) {
    CHECK(c1[i].name == c2[i].name);
    CHECK(c1[i].cat.same_tables(c2[i].cat));
    CHECK(c1[i].cat.num_objects() <= 4);
  }
  auto w1 = weight_corpus(3, 2, 6);
  auto w2 = weight_corpus(3, 2, 6);
  REQUIRE(w1.size() == w2.size());
  CHECK(w1.size() >= 100);
  for (size_t i = 0; i < w1.size(); ++i)
    CHECK(w1[i].weight.digest_string() == w2[i].weight.digest_string());
}
