// Classes of limit shapes, structural deciders for filtered/sifted, the
// flatness criterion through categories of elements, and the brute-force
// commutation oracle that grounds all of them.
#ifndef CATLAB_DOCTRINE_HPP_
#define CATLAB_DOCTRINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "catlab/core.hpp"
#include "catlab/enumerate.hpp"
#include "catlab/fincat.hpp"
#include "catlab/setfunctor.hpp"

namespace catlab {

// A (parametrized, bounded) class of limit shapes. The enumerator yields the
// member shapes within the bound (<= k objects, <= k^2 morphisms); for the
// table-search kinds this is exact for k <= 2 and is supplemented by curated
// three-object members at k >= 3, where exhaustive enumeration is out of
// desk reach (one-object members alone are all monoids of order <= k^2).
struct ShapeClass {
  enum class Kind {
    TerminalOnly,
    FiniteDiscrete,
    FiniteDiscreteNonempty,
    FiniteConnected,
    FiniteNonempty,
    AllFinite,
    Explicit,
  };
  Kind kind = Kind::AllFinite;
  int bound = 3;
  std::vector<FinCategory> explicit_shapes;

  static ShapeClass terminal_only();
  static ShapeClass finite_discrete(int k);
  static ShapeClass finite_discrete_nonempty(int k);
  static ShapeClass finite_connected(int k);
  static ShapeClass finite_nonempty(int k);
  static ShapeClass all_finite(int k);
  static ShapeClass explicit_shapes_class(std::vector<FinCategory> shapes);
  // CLI keywords: terminal-only, finite-discrete, finite-discrete-nonempty,
  // finite-connected, finite-nonempty, all-finite.
  static ShapeClass parse(const std::string& keyword, int bound);

  std::string name() const;
  bool contains(const FinCategory& shape) const;
  std::vector<FinCategory> enumerate(const Config& cfg) const;
  // Shapes whose colimits generate all colimits of the class (initial
  // objects, binary coproducts, coequalizers, pushouts, ...); used by the
  // cocompleteness filter and the bounded closure.
  std::vector<FinCategory> generating_colimit_shapes() const;
};

// A refutation of a commutation statement: the bifunctor on shape x index
// whose canonical comparison map fails to be a bijection. Everything needed
// to recheck from scratch is stored.
struct CommutationWitness {
  FinCategory shape;
  FinCategory index;
  std::vector<int> carriers;                // bifunctor on product(shape, index)
  std::vector<std::vector<int>> actions;
  std::optional<SetFunctor> weight;         // absent for the conical (Δ1) case
  int lhs_size = 0, rhs_size = 0;
};

// Three-valued answer for semi-decidable questions.
struct Verdict {
  enum class State { Decided, Refuted, ConsistentUpTo };
  State state = State::ConsistentUpTo;
  bool value = false;                       // meaningful when Decided
  std::string certificate;
  std::optional<CommutationWitness> witness;
  int shape_bound = 0;
  int value_bound = 0;

  static Verdict decided(bool v, std::string cert);
  static Verdict refuted(CommutationWitness w, std::string cert);
  static Verdict consistent(int shape_bound, int value_bound, std::string cert);

  bool decided_true() const { return state == State::Decided && value; }
  bool decided_false() const { return state == State::Decided && !value; }
  bool refuted_or_false() const { return state == State::Refuted || decided_false(); }
  // "positive" = nothing at this bound contradicts the property
  bool positive() const { return decided_true() || state == State::ConsistentUpTo; }
  std::string state_name() const;
};

// Result of one canonical-comparison computation.
struct CommutationCheck {
  int lhs_size = 0;   // M * (lim_S F)
  int rhs_size = 0;   // lim_S (M * F(s,-))
  bool bijective = false;
  std::vector<int> map;  // LHS class -> RHS family index
};

// The canonical map  M*(lim_S F) -> lim_S (M*F(s,-))  for a bifunctor F on
// product_category(shape, index), evaluated exactly. M = Δ1 gives the
// conical comparison colim_C lim_S F -> lim_S colim_C F.
CommutationCheck check_weighted_commutation(const SetFunctor& weight, const FinCategory& shape,
                                            const FinCategory& index, const SetFunctor& bifunctor);

bool recheck_witness(const CommutationWitness& w);

// Structural deciders (finite categories only, exhaustive conditions).
Verdict is_filtered(const FinCategory& c);
Verdict is_sifted(const FinCategory& c);
bool components_all_filtered(const FinCategory& c);

// Enumerates bifunctors F: shape x C -> Set with carriers <= value_bound in
// canonical order and tests the conical comparison; returns the first
// failure or ConsistentUpTo.
Verdict commutation_refute(const FinCategory& index, const FinCategory& shape, int value_bound,
                           const Config& cfg = Config::desk());

enum class DecisionMode { Structural, Oracle };

// D-filteredness of C (is Δ1: C^op -> Set D-flat). Structural mode applies
// the known characterizations per kind; Oracle mode runs the bounded
// commutation search over the class's enumerated shapes.
Verdict is_d_filtered(const FinCategory& c, const ShapeClass& d, int value_bound,
                      const Config& cfg = Config::desk(),
                      DecisionMode mode = DecisionMode::Structural);

// Flatness of a weight by the elements criterion: El(M)^op is D-filtered.
Verdict is_flat(const SetFunctor& m, const ShapeClass& d, int value_bound,
                const Config& cfg = Config::desk());

// Independent oracle: checks commutation of M-weighted colimits with
// D-limits directly, shape by shape, bifunctor by bifunctor.
Verdict is_flat_direct(const SetFunctor& m, const ShapeClass& d, int value_bound,
                       const Config& cfg = Config::desk());
// Same oracle over an explicit shape panel.
Verdict is_flat_direct_on_shapes(const SetFunctor& m, const std::vector<FinCategory>& shapes,
                                 int value_bound, const Config& cfg = Config::desk());

// Per-weight comparison of the direct oracle against the structural
// predicate on El(M)^op (components filtered / filtered-or-empty /
// sifted-or-empty for the three classes in scope).
struct FlatExampleRow {
  std::string weight_name;
  bool structural = false;
  Verdict direct;
  bool agree = false;
};
struct FlatClassReport {
  std::string class_name;
  std::vector<FlatExampleRow> rows;
  bool all_agree = true;
};
struct NamedWeight;  // corpus.hpp
FlatClassReport characterize_flat_examples(const ShapeClass& d,
                                           const std::vector<NamedWeight>& weights,
                                           int value_bound, const Config& cfg = Config::desk());

// Does C have a colimit for the given diagram? Exhaustive cocone search.
bool has_colimit(const FinCategory& c, const FinCategory& shape, const FinFunctor& diagram);
bool d_cocomplete(const FinCategory& c, const ShapeClass& d, const Config& cfg = Config::desk());

// Scans the category corpus up to category_bound for a D-cocomplete member
// that is not D-filtered; Refuted means the class is not weakly sound at
// desk scale, ConsistentUpTo that the search found nothing.
Verdict weak_soundness_search(const ShapeClass& d, int category_bound, int value_bound,
                              const Config& cfg = Config::desk());

}  // namespace catlab

#endif  // CATLAB_DOCTRINE_HPP_
