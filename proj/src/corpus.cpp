#include "catlab/corpus.hpp"

#include <memory>

#include "catlab/enumerate.hpp"

namespace catlab {

namespace {

// Two fixed 3-element monoids beyond the cyclic one: the meet-semilattice of
// a chain and the right-zero band with unit.
FinCategory semilattice3() {
  return cats::monoid_from_table({{0, 1, 2}, {1, 1, 2}, {2, 2, 2}}, 0, "s");
}
FinCategory right_zero_monoid() {
  return cats::monoid_from_table({{0, 1, 2}, {1, 1, 2}, {2, 1, 2}}, 0, "r");
}
FinCategory klein4() {
  return cats::monoid_from_table(
      {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, 0, "k");
}

std::vector<NamedCategory> curated(int max_objects) {
  std::vector<NamedCategory> out;
  auto add = [&](const std::string& name, FinCategory c) {
    if (c.num_objects() <= max_objects) out.push_back({name, std::move(c)});
  };
  add("empty", cats::empty_category());
  add("terminal", cats::terminal());
  add("discrete2", cats::discrete(2));
  add("discrete3", cats::discrete(3));
  add("arrow", cats::walking_arrow());
  add("parallel-pair", cats::parallel_pair());
  add("reflexive-pair", cats::reflexive_pair());
  add("walking-iso", cats::walking_iso());
  add("span", cats::span());
  add("cospan", cats::cospan());
  add("chain3", cats::chain(3));
  add("square", cats::commutative_square());
  add("walking-idempotent", cats::walking_idempotent());
  add("z2", cats::cyclic_group(2));
  add("z3", cats::cyclic_group(3));
  add("left-zero", cats::left_zero_monoid());
  add("right-zero", right_zero_monoid());
  add("semilattice3", semilattice3());
  add("klein4", klein4());
  add("arrow+arrow", cats::disjoint_union(cats::walking_arrow(), cats::walking_arrow()));
  add("arrow+terminal", cats::disjoint_union(cats::walking_arrow(), cats::terminal()));
  add("parallel-pair+terminal",
      cats::disjoint_union(cats::parallel_pair(), cats::terminal()));
  add("z2+terminal", cats::disjoint_union(cats::cyclic_group(2), cats::terminal()));
  add("chain4", cats::chain(4));
  add("arrow-x-arrow", product_category(cats::walking_arrow(), cats::walking_arrow()));
  return out;
}

}  // namespace

std::vector<NamedCategory> category_corpus(int max_objects) {
  std::vector<NamedCategory> out = curated(max_objects);
  // seeded random posets (validated by construction)
  Rng rng(kCorpusSeed);
  for (int i = 0; i < 4; ++i) {
    int n = 3 + rng.below(std::max(1, max_objects - 2));
    if (n > max_objects) n = max_objects;
    std::vector<std::pair<int, int>> below;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng.below(3) == 0) below.emplace_back(a, b);
    out.push_back({"poset-r" + std::to_string(i), cats::poset_from_relation(n, below)});
  }
  // seeded random 3-element monoid tables, rejection-sampled on associativity
  int found = 0;
  for (int attempt = 0; attempt < 200 && found < 2; ++attempt) {
    std::vector<std::vector<int>> t = {{0, 1, 2}, {1, 0, 0}, {2, 0, 0}};
    for (int i = 1; i < 3; ++i)
      for (int j = 1; j < 3; ++j) t[i][j] = rng.below(3);
    try {
      FinCategory m = cats::monoid_from_table(t, 0, "q");
      out.push_back({"monoid-r" + std::to_string(found), std::move(m)});
      ++found;
    } catch (const ValidationError&) {
    }
  }
  return out;
}

std::vector<NamedWeight> weight_corpus(int max_objects, int max_carrier, int random_per_category,
                                       std::uint64_t seed) {
  std::vector<NamedWeight> out;
  Rng rng(seed);
  for (const NamedCategory& nc : category_corpus(max_objects)) {
    if (nc.cat.num_objects() > max_objects) continue;
    auto base = std::make_shared<const FinCategory>(nc.cat);
    out.push_back({"delta1@" + nc.name,
                   SetFunctor::constant(base, Variance::Contravariant, 1)});
    if (base->num_objects() > 0)
      out.push_back({"zero@" + nc.name, SetFunctor::constant(base, Variance::Contravariant, 0)});
    for (int c = 0; c < base->num_objects(); ++c)
      out.push_back({"y(" + base->object_name(c) + ")@" + nc.name,
                     SetFunctor::representable_presheaf(base, c)});
    for (int i = 0; i < random_per_category; ++i) {
      auto w = random_set_functor(base, Variance::Contravariant, max_carrier, rng);
      if (w) out.push_back({"rand" + std::to_string(i) + "@" + nc.name, std::move(*w)});
    }
  }
  return out;
}

}  // namespace catlab
