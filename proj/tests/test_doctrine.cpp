#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>

#include "catlab/corpus.hpp"
#include "catlab/doctrine.hpp"

using namespace catlab;

namespace {
std::shared_ptr<const FinCategory> share(FinCategory c) {
  return std::make_shared<const FinCategory>(std::move(c));
}
}  // namespace

TEST_CASE("is_filtered on the standard examples") {
  CHECK(is_filtered(cats::cospan()).decided_true());  // has a terminal object
  CHECK(is_filtered(cats::terminal()).decided_true());
  CHECK(is_filtered(cats::chain(3)).decided_true());
  CHECK(is_filtered(cats::discrete(2)).decided_false());
  CHECK(is_filtered(cats::parallel_pair()).decided_false());
  CHECK(is_filtered(cats::empty_category()).decided_false());
  CHECK(is_filtered(cats::cyclic_group(2)).decided_false());
}

TEST_CASE("is_sifted on the standard examples") {
  CHECK(is_sifted(cats::reflexive_pair()).decided_true());
  CHECK(is_sifted(cats::cospan()).decided_true());  // binary coproducts exist
  CHECK(is_sifted(cats::walking_idempotent()).decided_true());
  CHECK(is_sifted(cats::left_zero_monoid()).decided_true());
  CHECK(is_sifted(cats::discrete(2)).decided_false());
  CHECK(is_sifted(cats::parallel_pair()).decided_false());
  CHECK(is_sifted(cats::cyclic_group(2)).decided_false());
  CHECK(is_sifted(cats::empty_category()).decided_false());
}

TEST_CASE("commutation oracle: coproducts do not preserve the terminal object") {
  // C = discrete 2 against the empty shape at bound 1: 1+1 != 1
  Verdict v = commutation_refute(cats::discrete(2), cats::empty_category(), 1);
  REQUIRE(v.state == Verdict::State::Refuted);
  CHECK(recheck_witness(*v.witness));
  CHECK(v.witness->lhs_size != v.witness->rhs_size);
}

TEST_CASE("commutation oracle: (A+B)x(A'+B') is not A x A' + B x B'") {
  Verdict v = commutation_refute(cats::discrete(2), cats::discrete(2), 2);
  REQUIRE(v.state == Verdict::State::Refuted);
  CHECK(recheck_witness(*v.witness));
}

TEST_CASE("commutation oracle: filtered index passes small shapes") {
  for (const FinCategory& shape :
       {cats::empty_category(), cats::discrete(2), cats::parallel_pair()}) {
    Verdict v = commutation_refute(cats::cospan(), shape, 2);
    CHECK(v.state == Verdict::State::ConsistentUpTo);
  }
}

TEST_CASE("sifted index commutes with finite products at the bound") {
  for (const FinCategory& shape : {cats::discrete(2), cats::discrete(3)}) {
    CHECK(commutation_refute(cats::reflexive_pair(), shape, 2).state ==
          Verdict::State::ConsistentUpTo);
  }
  // non-sifted: the parallel pair is refuted against binary products
  Verdict v = commutation_refute(cats::parallel_pair(), cats::discrete(2), 2);
  REQUIRE(v.state == Verdict::State::Refuted);
  CHECK(recheck_witness(*v.witness));
}

TEST_CASE("is_d_filtered structural shortcuts") {
  Config cfg;
  // terminal object -> filtered -> AllFinite-filtered
  CHECK(is_d_filtered(cats::cospan(), ShapeClass::all_finite(3), 2, cfg).decided_true());
  CHECK(is_d_filtered(cats::discrete(2), ShapeClass::terminal_only(), 2, cfg).decided_false());
  CHECK(is_d_filtered(cats::reflexive_pair(), ShapeClass::finite_discrete_nonempty(3), 2, cfg)
            .decided_true());
  // the empty category is D-filtered for the nonempty-shape classes
  CHECK(is_d_filtered(cats::empty_category(), ShapeClass::finite_discrete_nonempty(3), 2, cfg)
            .decided_true());
  CHECK(is_d_filtered(cats::empty_category(), ShapeClass::finite_nonempty(3), 2, cfg)
            .decided_true());
  CHECK(is_d_filtered(cats::empty_category(), ShapeClass::finite_connected(3), 2, cfg)
            .decided_true());
  CHECK(is_d_filtered(cats::empty_category(), ShapeClass::all_finite(3), 2, cfg).decided_false());
  // disjoint union of filtered pieces: connected-filtered but not nonempty-filtered
  FinCategory two_filtered = cats::disjoint_union(cats::walking_arrow(), cats::terminal());
  CHECK(is_d_filtered(two_filtered, ShapeClass::finite_connected(3), 2, cfg).decided_true());
  CHECK(is_d_filtered(two_filtered, ShapeClass::finite_nonempty(3), 2, cfg).decided_false());
}

TEST_CASE("shortcut corroborated by the oracle on two-object shapes") {
  Config cfg;
  cfg.iteration_cap = 5'000'000;
  // reflexive pair decided sifted by the shortcut; the oracle at bound 2
  // finds no counterexample over the discrete shapes
  Verdict s = is_d_filtered(cats::reflexive_pair(), ShapeClass::finite_discrete_nonempty(2), 2,
                            cfg, DecisionMode::Oracle);
  CHECK(s.state == Verdict::State::ConsistentUpTo);
}

TEST_CASE("is_flat: representables are flat for every class") {
  auto base = share(cats::parallel_pair());
  for (int c = 0; c < 2; ++c) {
    SetFunctor yc = SetFunctor::representable_presheaf(base, c);
    for (const ShapeClass& d :
         {ShapeClass::terminal_only(), ShapeClass::all_finite(3), ShapeClass::finite_connected(3),
          ShapeClass::finite_nonempty(3), ShapeClass::finite_discrete_nonempty(3)}) {
      CHECK(is_flat(yc, d, 2).decided_true());
    }
  }
}

TEST_CASE("is_flat: delta1 coherence with is_d_filtered") {
  Config cfg;
  for (const NamedCategory& nc : category_corpus(3)) {
    auto base = share(nc.cat);
    SetFunctor d1 = SetFunctor::constant(base, Variance::Contravariant, 1);
    for (const ShapeClass& d : {ShapeClass::terminal_only(), ShapeClass::all_finite(3),
                                ShapeClass::finite_discrete_nonempty(3)}) {
      Verdict a = is_flat(d1, d, 2, cfg);
      Verdict b = is_d_filtered(nc.cat, d, 2, cfg);
      CHECK(a.state == b.state);
      CHECK(a.value == b.value);
    }
  }
}

TEST_CASE("is_flat_direct refutes the two-element discrete weight") {
  // M on the terminal category with two elements: El(M)^op is discrete 2
  auto base = share(cats::terminal());
  SetFunctor m(base, Variance::Contravariant, {2}, {{0, 1}});
  Verdict v = is_flat_direct(m, ShapeClass::finite_discrete_nonempty(2), 2);
  REQUIRE(v.state == Verdict::State::Refuted);
  CHECK(recheck_witness(*v.witness));
  // and the El-criterion agrees
  CHECK(is_flat(m, ShapeClass::finite_discrete_nonempty(2), 2).decided_false());
}

TEST_CASE("the empty weight is flat for the nonempty classes, refuted by terminal-only") {
  auto base = share(cats::walking_arrow());
  SetFunctor zero = SetFunctor::constant(base, Variance::Contravariant, 0);
  CHECK(is_flat(zero, ShapeClass::finite_nonempty(3), 2).decided_true());
  Verdict direct = is_flat_direct(zero, ShapeClass::finite_nonempty(2), 2);
  CHECK(direct.state == Verdict::State::ConsistentUpTo);
  Verdict term = is_flat_direct(zero, ShapeClass::terminal_only(), 2);
  REQUIRE(term.state == Verdict::State::Refuted);
  CHECK(recheck_witness(*term.witness));
}

TEST_CASE("d_cocomplete via generators matches hand analysis") {
  Config cfg;
  CHECK(d_cocomplete(cats::cospan(), ShapeClass::finite_discrete_nonempty(3), cfg));
  CHECK(!d_cocomplete(cats::discrete(2), ShapeClass::finite_discrete_nonempty(3), cfg));
  CHECK(!d_cocomplete(cats::cyclic_group(2), ShapeClass::finite_connected(3), cfg));
  CHECK(d_cocomplete(cats::chain(3), ShapeClass::finite_connected(3), cfg));
  CHECK(d_cocomplete(cats::commutative_square(), ShapeClass::finite_connected(3), cfg));
  CHECK(d_cocomplete(cats::chain(3), ShapeClass::terminal_only(), cfg));
  CHECK(!d_cocomplete(cats::cospan(), ShapeClass::terminal_only(), cfg));
}

TEST_CASE("weak soundness searches return consistent for the paper classes") {
  Config cfg;
  for (const ShapeClass& d :
       {ShapeClass::terminal_only(), ShapeClass::finite_discrete_nonempty(3)}) {
    Verdict v = weak_soundness_search(d, 3, 2, cfg);
    CHECK(v.state == Verdict::State::ConsistentUpTo);
  }
}

TEST_CASE("shape class enumerators agree with their membership predicates") {
  Config cfg;
  for (const ShapeClass& d :
       {ShapeClass::terminal_only(), ShapeClass::finite_discrete(3),
        ShapeClass::finite_discrete_nonempty(2), ShapeClass::finite_connected(2),
        ShapeClass::finite_nonempty(2), ShapeClass::all_finite(2)}) {
    for (const FinCategory& s : d.enumerate(cfg)) CHECK(d.contains(s));
  }
  // at bound 2 the general kinds are exhaustive: the connected members are
  // exactly the connected members of the all-finite enumeration
  auto all2 = ShapeClass::all_finite(2).enumerate(cfg);
  auto conn2 = ShapeClass::finite_connected(2).enumerate(cfg);
  int connected_in_all = 0;
  for (const auto& s : all2)
    if (num_components(s) == 1) ++connected_in_all;
  CHECK(static_cast<int>(conn2.size()) == connected_in_all);
  CHECK(ShapeClass::finite_discrete(3).enumerate(cfg).size() == 4);
  CHECK(ShapeClass::terminal_only().enumerate(cfg).size() == 1);
  // membership is isomorphism-invariant for explicit classes
  ShapeClass ex = ShapeClass::explicit_shapes_class({cats::span()});
  CHECK(ex.contains(opposite(cats::cospan())));
  CHECK(!ex.contains(cats::cospan()));
}

TEST_CASE("monotonicity: a refutation at a bound persists at larger bounds") {
  Verdict v2 = commutation_refute(cats::parallel_pair(), cats::discrete(2), 2);
  REQUIRE(v2.state == Verdict::State::Refuted);
  Verdict v3 = commutation_refute(cats::parallel_pair(), cats::discrete(2), 3);
  CHECK(v3.state == Verdict::State::Refuted);
  // the bound-2 witness is still accepted by the recheck, independent of
  // the search bound
  CHECK(recheck_witness(*v2.witness));
  for (int c : v2.witness->carriers) CHECK(c <= 2);
}

TEST_CASE("pullback shape alone is not weakly sound at desk scale") {
  // every category has cospan-index colimits (the sink vertex is final), so
  // the filter keeps everything; the parallel pair is then refuted
  ShapeClass d = ShapeClass::explicit_shapes_class({cats::cospan()});
  Verdict v = weak_soundness_search(d, 2, 2);
  CHECK(v.state == Verdict::State::Refuted);
  if (v.witness) CHECK(recheck_witness(*v.witness));
}
