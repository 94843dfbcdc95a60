// Finite-set-valued functors with explicit action tables, and exact
// computation of conical limits/colimits, categories of elements, and
// weighted colimits via the elements construction.
#ifndef CATLAB_SETFUNCTOR_HPP_
#define CATLAB_SETFUNCTOR_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catlab/core.hpp"
#include "catlab/fincat.hpp"

namespace catlab {

enum class Variance { Covariant, Contravariant };

// A functor base -> Set (covariant) or base^op -> Set (contravariant).
// Carrier at each object is {0, .., n-1}; the action of a morphism m is a
// table from the carrier at its variance-source to the carrier at its
// variance-target. Validated on construction: identities act as identities
// and every composition-table entry is respected.
class SetFunctor {
 public:
  SetFunctor(std::shared_ptr<const FinCategory> base, Variance variance,
             std::vector<int> carriers, std::vector<std::vector<int>> actions);
  SetFunctor(const FinCategory& base, Variance variance, std::vector<int> carriers,
             std::vector<std::vector<int>> actions);

  static SetFunctor constant(std::shared_ptr<const FinCategory> base, Variance v, int size);
  // Covariant hom-functor C(c, -).
  static SetFunctor representable_covariant(std::shared_ptr<const FinCategory> base, int c);
  // Contravariant presheaf C(-, c); elements are positions in the hom list.
  static SetFunctor representable_presheaf(std::shared_ptr<const FinCategory> base, int c);

  const FinCategory& base() const { return *base_; }
  const std::shared_ptr<const FinCategory>& base_ptr() const { return base_; }
  Variance variance() const { return variance_; }
  int carrier(int obj) const { return carriers_[obj]; }
  const std::vector<int>& carriers() const { return carriers_; }
  // Table of morphism m, from carrier(variance_src(m)) to carrier(variance_tgt(m)).
  const std::vector<int>& action(int m) const { return actions_[m]; }
  int apply(int m, int x) const { return actions_[m][x]; }

  int variance_src(int m) const {
    return variance_ == Variance::Covariant ? base_->src(m) : base_->tgt(m);
  }
  int variance_tgt(int m) const {
    return variance_ == Variance::Covariant ? base_->tgt(m) : base_->src(m);
  }

  int total_size() const;
  bool same_base(const SetFunctor& other) const;
  std::string digest_string() const;

 private:
  void check() const;
  std::shared_ptr<const FinCategory> base_;
  Variance variance_;
  std::vector<int> carriers_;
  std::vector<std::vector<int>> actions_;
};

// A cocone under a covariant diagram F: legs[o] maps F(o) into an apex of
// size apex_size. Naturality of the legs is exhaustively checkable.
struct Cocone {
  int apex_size = 0;
  std::vector<std::vector<int>> legs;
};
struct Cone {
  int apex_size = 0;
  std::vector<std::vector<int>> legs;  // legs[o]: apex -> F(o)
};

bool cocone_is_natural(const SetFunctor& f, const Cocone& c);
bool cone_is_natural(const SetFunctor& f, const Cone& c);

// Exact conical limit of a covariant diagram. Elements are the compatible
// families, numbered lexicographically (object 0 most significant), so
// independent runs agree bit for bit.
struct LimitResult {
  int size = 0;
  std::vector<std::vector<int>> families;  // each of length num_objects
  Cone cone;                               // legs[o][k] = families[k][o]
};
LimitResult limit(const SetFunctor& f);

// Exact conical colimit: disjoint union quotiented by the equivalence
// generated by x ~ F(m)(x); classes are numbered by least member in the
// canonical disjoint-union enumeration.
struct ColimitResult {
  int size = 0;
  Cocone cocone;  // legs[o][x] = class of x in F(o)
};
ColimitResult colimit(const SetFunctor& f);

// Exhaustive universal-property checks: every (co)cone with apex size up to
// max_apex factors through the computed value exactly once.
bool verify_limit_universality(const SetFunctor& f, const LimitResult& lim, int max_apex,
                               long long iteration_cap = 5'000'000);
bool verify_colimit_universality(const SetFunctor& f, const ColimitResult& col, int max_apex,
                                 long long iteration_cap = 5'000'000);

// Category of elements of a contravariant M. Objects are pairs (c, x in
// M(c)); a morphism (c, x) -> (c', x') is a base morphism f: c' -> c with
// M(f)(x) = x'. This is the unique orientation making El(Δ1 on C^op) ≅ C^op,
// so the flatness criterion "El(M)^op is D-filtered" and the definition
// "C is D-filtered iff Δ1: C^op -> Set is D-flat" agree.
struct ElementsCategory {
  FinCategory total;
  FinFunctor projection;                       // total -> base^op
  std::vector<std::pair<int, int>> elements;   // El-object -> (c, x)
  std::vector<int> object_of;                  // flattened (c,x) -> El-object
  std::vector<int> underlying;                 // El-morphism -> base morphism

  int object_index(int c, int x) const;
};
ElementsCategory category_of_elements(const SetFunctor& m);

// M * H as the conical colimit of H reindexed along El(M)^op -> C.
struct WeightedColimitResult {
  int size = 0;
  SetFunctor reindexed;  // the diagram on opposite(El(M).total)
  ColimitResult colim;   // its conical colimit; legs indexed by El-objects
  std::vector<std::pair<int, int>> elements;  // El-object -> (c, x)
};
WeightedColimitResult weighted_colimit(const SetFunctor& m, const SetFunctor& h);

// Backtracking search for a family of carrier bijections commuting with all
// actions. Returns the witness (per-object bijections) or nullopt.
std::optional<std::vector<std::vector<int>>> presheaf_iso(const SetFunctor& p,
                                                          const SetFunctor& q);

bool is_natural_transformation(const SetFunctor& p, const SetFunctor& q,
                               const std::vector<std::vector<int>>& components);
std::vector<std::vector<std::vector<int>>> natural_transformations(
    const SetFunctor& p, const SetFunctor& q, long long iteration_cap = 2'000'000);

// F ∘ J for F a set functor on J's codomain; the result lives on J's domain.
SetFunctor restrict_along(const SetFunctor& f, const FinFunctor& j,
                          std::shared_ptr<const FinCategory> domain);

// Cheap iso-invariant fingerprint (sorted carrier sizes plus action
// multiset); equal fingerprints gate the quadratic presheaf_iso calls.
std::string iso_prehash(const SetFunctor& f);

// Relabels every carrier by the given bijections (new = perm[old]).
SetFunctor relabel(const SetFunctor& f, const std::vector<std::vector<int>>& perms);

}  // namespace catlab

#endif  // CATLAB_SETFUNCTOR_HPP_
