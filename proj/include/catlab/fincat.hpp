// Finite categories as fully materialized composition tables, validated on
// construction, plus functors between them and the basic constructions
// (opposite, product, Karoubi envelope, connected components).
#ifndef CATLAB_FINCAT_HPP_
#define CATLAB_FINCAT_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catlab/core.hpp"

namespace catlab {

// Unvalidated category data in user names, as read from a file or built in
// code. `compose` lists triples (first, then, equals) meaning equals = then∘first.
struct RawCategory {
  struct RawMorphism {
    std::string name, src, tgt;
  };
  struct RawComposite {
    std::string first, then, equals;
  };
  std::vector<std::string> objects;
  std::vector<RawMorphism> morphisms;
  std::vector<std::pair<std::string, std::string>> identities;  // object -> morphism
  std::vector<RawComposite> compose;
};

// A validated finite category. Objects and morphisms are dense indices;
// the original names are kept so witnesses can be reported in user terms.
// Every law (totality of composition on composable pairs, associativity,
// unit laws) has been checked exhaustively — that is what "validated" means.
class FinCategory {
 public:
  FinCategory() = default;  // the empty category

  // validate_category: returns the validated value or throws ValidationError
  // with kinds MissingComposite | NonAssociative | BadIdentity |
  // SourceTargetMismatch, naming the offending entry.
  static FinCategory validate(const RawCategory& raw);

  int num_objects() const { return static_cast<int>(identity_.size()); }
  int num_morphisms() const { return static_cast<int>(src_.size()); }

  int src(int m) const { return src_[m]; }
  int tgt(int m) const { return tgt_[m]; }
  int identity(int obj) const { return identity_[obj]; }
  bool is_identity(int m) const { return identity_[src_[m]] == m && src_[m] == tgt_[m]; }

  // g∘f — f first, then g. Precondition: tgt(f) == src(g).
  int compose(int g, int f) const { return table_[f * num_morphisms() + g]; }

  const std::string& object_name(int o) const { return object_names_[o]; }
  const std::string& morphism_name(int m) const { return morphism_names_[m]; }

  const std::vector<int>& hom(int a, int b) const { return hom_[a * num_objects() + b]; }

  bool is_idempotent(int m) const { return src_[m] == tgt_[m] && compose(m, m) == m; }

  std::optional<int> initial_object() const;
  std::optional<int> terminal_object() const;

  // Structural equality of tables (names ignored).
  bool same_tables(const FinCategory& other) const;

  // Key invariant under object/morphism relabeling; used to deduplicate
  // enumerated categories. Exact minimization, so only for small categories.
  std::string canonical_key() const;

  std::string digest_string() const;

 private:
  friend FinCategory opposite(const FinCategory&);
  friend FinCategory product_category(const FinCategory&, const FinCategory&);
  friend class CategoryBuilder;
  void finish_unchecked();  // fills hom tables; assumes laws already hold

  std::vector<std::string> object_names_;
  std::vector<std::string> morphism_names_;
  std::vector<int> src_, tgt_;
  std::vector<int> identity_;  // per object
  std::vector<int> table_;     // table_[f*n+g] = g∘f, -1 when not composable
  std::vector<std::vector<int>> hom_;
};

// Convenience for building categories in code; runs the same validation.
class CategoryBuilder {
 public:
  int add_object(const std::string& name);
  int add_identity(int obj, const std::string& name);  // returns morphism id
  int add_morphism(const std::string& name, int src, int tgt);
  void set_compose(int f_first, int g_then, int equals);
  FinCategory validate() const;

 private:
  RawCategory raw_;
};

// A functor between validated finite categories, itself validated: it must
// preserve sources, targets, identities, and every composition-table entry.
class FinFunctor {
 public:
  FinFunctor(const FinCategory& dom, const FinCategory& cod, std::vector<int> object_map,
             std::vector<int> morphism_map);

  const FinCategory& domain() const { return *dom_; }
  const FinCategory& codomain() const { return *cod_; }
  int on_object(int o) const { return object_map_[o]; }
  int on_morphism(int m) const { return morphism_map_[m]; }
  const std::vector<int>& object_map() const { return object_map_; }
  const std::vector<int>& morphism_map() const { return morphism_map_; }

  bool fully_faithful() const;

 private:
  std::shared_ptr<const FinCategory> dom_, cod_;
  std::vector<int> object_map_, morphism_map_;
};

FinCategory opposite(const FinCategory& c);
FinCategory product_category(const FinCategory& c, const FinCategory& d);

struct KaroubiEnvelope {
  FinCategory category;   // objects = idempotents of C
  FinFunctor embedding;   // C -> Q(C), c |-> id_c
  std::vector<int> object_idempotent;  // Q-object -> idempotent morphism of C
};
KaroubiEnvelope karoubi_envelope(const FinCategory& c);

// Partition of objects under the equivalence generated by "some morphism
// connects them". Component ids are dense, ordered by least member.
std::vector<int> connected_components(const FinCategory& c);
int num_components(const FinCategory& c);

// Full subcategory on the given objects (indices into c).
FinCategory full_subcategory(const FinCategory& c, const std::vector<int>& objects);

// Exact isomorphism test by backtracking over object bijections, then
// hom-wise morphism bijections. Fine for corpus-sized categories.
bool categories_isomorphic(const FinCategory& a, const FinCategory& b);

// Equivalence = some functor a -> b that is fully faithful and essentially
// surjective, found by exhaustive functor search.
bool categories_equivalent(const FinCategory& a, const FinCategory& b,
                           long long iteration_cap = 2'000'000);

// Standard small categories used across the corpus and the tests.
namespace cats {
FinCategory empty_category();
FinCategory terminal();           // 1
FinCategory discrete(int n);
FinCategory walking_arrow();      // a -> b
FinCategory parallel_pair();      // a ⇉ b
FinCategory reflexive_pair();     // a ⇉ b with common section (7 morphisms)
FinCategory walking_iso();
FinCategory span();               // b <- a -> c
FinCategory cospan();             // a -> c <- b   (pullback limit shape)
FinCategory chain(int n);         // poset 0 -> 1 -> ... -> n-1
FinCategory commutative_square();
FinCategory walking_idempotent(); // monoid {1, e}, e² = e
FinCategory cyclic_group(int n);  // Z/n as a one-object category
FinCategory left_zero_monoid();   // {1, a, b} with xy = x on {a,b}
FinCategory monoid_from_table(const std::vector<std::vector<int>>& mult, int unit,
                              const std::string& name_prefix = "m");
FinCategory poset_from_relation(int n, const std::vector<std::pair<int, int>>& below);
FinCategory disjoint_union(const FinCategory& a, const FinCategory& b);
}  // namespace cats

}  // namespace catlab

#endif  // CATLAB_FINCAT_HPP_
