// Bounded free cocompletions inside presheaf categories, canonical
// reflexive-coequalizer presentations, coproduct decompositions over
// disconnected shapes, and the Cauchy-weight decider.
#ifndef CATLAB_COCOMPLETION_HPP_
#define CATLAB_COCOMPLETION_HPP_

#include <memory>
#include <vector>

#include "catlab/colimit_expr.hpp"
#include "catlab/doctrine.hpp"
#include "catlab/fincat.hpp"
#include "catlab/setfunctor.hpp"

namespace catlab {

struct ClosureMember {
  SetFunctor presheaf;
  ExprPtr provenance;  // evaluates to exactly this presheaf
  int stage = 0;
};

// Iterated colimit closure of the representables: stage 0 is the
// representables, stage n+1 adds colimits over the class's shapes of
// diagrams valued in stage n, deduplicated up to isomorphism and truncated
// at value_bound. The general kinds expand along the class's generating
// shape family (cofinal for its colimits).
std::vector<ClosureMember> bounded_closure(const std::shared_ptr<const FinCategory>& base,
                                           const ShapeClass& shapes, int depth, int value_bound,
                                           const Config& cfg = Config::desk());

// Canonical presentation of P as a reflexive coequalizer of coproducts of
// representables: one R0 summand y(c) per element (c, x), one R1 summand
// per morphism of El(P) (identities included, giving the common section).
struct ReflexivePresentation {
  std::vector<int> r0_objects;   // base object of each R0 summand
  std::vector<int> r1_objects;   // base object of each R1 summand
  std::vector<int> d0_summand;   // R1 summand -> R0 summand (identity leg)
  std::vector<int> d1_summand;   // R1 summand -> R0 summand (y(f) leg)
  std::vector<int> d1_morphism;  // the base morphism f of that leg
  std::vector<int> section;      // R0 summand -> its identity R1 summand
  SetFunctor presented;
};
ReflexivePresentation reflexive_presentation(const SetFunctor& p);

// Evaluated form of a presentation, for the round-trip checks.
struct PresentationEvaluation {
  SetFunctor r0, r1;
  std::vector<std::vector<int>> d0, d1, s;  // natural transformation components
  SetFunctor coequalizer;
  bool section_laws = false;  // d0∘s = d1∘s = id
};
PresentationEvaluation evaluate_presentation(const ReflexivePresentation& pres);

// Σ_i y(objects[i]) as a presheaf; elements at d are pairs (summand, hom).
SetFunctor coproduct_of_representables(const std::shared_ptr<const FinCategory>& base,
                                       const std::vector<int>& objects);

// colim(F) ≅ Σ over components of colim(F restricted), with the comparison
// bijection computed and verified.
struct CoproductDecomposition {
  std::vector<int> component_of;  // shape object -> component id
  std::vector<int> component_colimit_sizes;
  int total_size = 0;
  bool bijective = false;
};
CoproductDecomposition coproduct_decomposition(const FinCategory& shape, const SetFunctor& f);

// Cauchy weights are the retracts of representables; failing commutation
// with some limit shape at the bound refutes, a found splitting decides.
Verdict is_cauchy_weight(const SetFunctor& m, int value_bound, const Config& cfg = Config::desk());

}  // namespace catlab

#endif  // CATLAB_COCOMPLETION_HPP_
