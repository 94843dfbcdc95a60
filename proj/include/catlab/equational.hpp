// Finite-arity term calculus over Set: languages whose function symbols
// carry explicit finite input and output arities, recursive terms built by
// base maps, symbols, powers and composition, structures interpreting them
// as tables A^X -> A^Y, equational theories, model enumeration, free
// structures by congruence closure, and orthogonality.
#ifndef CATLAB_EQUATIONAL_HPP_
#define CATLAB_EQUATIONAL_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "catlab/core.hpp"

namespace catlab {

struct FunctionSymbol {
  std::string name;
  int in_arity = 0;   // |X|
  int out_arity = 0;  // |Y|
};

class Language {
 public:
  explicit Language(std::vector<FunctionSymbol> symbols);
  const std::vector<FunctionSymbol>& symbols() const { return symbols_; }
  int index_of(const std::string& name) const;  // -1 when absent

 private:
  std::vector<FunctionSymbol> symbols_;
};

// Terms. The four constructors:
//   base maps g: Y -> X as (X,Y)-ary terms (interpreted by precomposition),
//   function symbols, powers t^Z, and composition s(t_1, .., t_k).
// Products Z⊗X are encoded z*|X|+x; sums Σ X_j by block offsets. All tuple
// encodings are lexicographic with the first coordinate most significant.
struct Term;
using TermPtr = std::shared_ptr<const Term>;
struct Term {
  enum class Kind { BaseMap, Symbol, Power, Compose };
  Kind kind = Kind::Symbol;
  std::vector<int> map_images;  // BaseMap: images of the out-set in the in-set
  int map_in = 0;               // BaseMap: |X|
  std::string symbol;           // Symbol
  TermPtr sub;                  // Power: t; Compose: s
  int power = 0;                // Power: |Z|
  std::vector<TermPtr> args;    // Compose: the t_j

  static TermPtr base_map(std::vector<int> images, int in_size);
  static TermPtr identity_map(int size);
  static TermPtr sym(std::string name);
  static TermPtr pow(TermPtr t, int z);
  static TermPtr comp(TermPtr s, std::vector<TermPtr> ts);
  std::string show() const;
};

struct Arity {
  int in = 0, out = 0;
  bool operator==(const Arity&) const = default;
};

// Throws UnknownSymbol or ArityMismatch.
Arity arity_of_term(const Language& l, const Term& t);

struct Equation {
  TermPtr lhs, rhs;
};

struct Theory {
  Language language;
  std::vector<Equation> equations;  // arities must agree per equation

  Theory(Language l, std::vector<Equation> eqs);
};

// A structure: carrier {0..n-1} and one table per symbol, mapping encoded
// tuples of A^X to encoded tuples of A^Y.
struct Structure {
  int carrier = 0;
  std::vector<std::vector<long long>> tables;

  bool operator==(const Structure&) const = default;
};

long long encode_tuple(const std::vector<int>& tuple, int carrier);
std::vector<int> decode_tuple(long long code, int carrier, int length);

bool validate_structure(const Language& l, const Structure& a);

// The interpretation t_A: A^X -> A^Y as an explicit table.
std::vector<long long> interpret_term(const Language& l, const Term& t, const Structure& a);

struct SatisfactionResult {
  bool ok = true;
  int failing_equation = -1;
  long long failing_point = -1;
};
SatisfactionResult satisfies(const Theory& e, const Structure& a);

// All models on carrier {0..n-1} in canonical table order.
std::vector<Structure> enumerate_models(const Theory& e, int n,
                                        const Config& cfg = Config::desk());
// Count of all structures (no equations filtered), for sanity checks.
long long structure_space_size(const Language& l, int n);

// All language-structure morphisms A -> B (underlying functions commuting
// with every symbol's square), in lexicographic order.
std::vector<std::vector<int>> enumerate_morphisms(const Language& l, const Structure& a,
                                                  const Structure& b);

// Reflexive coequalizer of model morphisms d0, d1: A -> B with a common
// section s. The carrier is the plain finite-set coequalizer; the tables
// must descend (DescentFailure otherwise), and the result is re-checked as
// a model. Universality is verified against the supplied candidate targets.
struct ModelCoequalizer {
  Structure quotient;
  std::vector<int> projection;  // B -> quotient
  bool is_model = false;
  bool universal = true;
};
ModelCoequalizer reflexive_coequalizer_of_models(const Theory& e, const Structure& a,
                                                 const Structure& b, const std::vector<int>& d0,
                                                 const std::vector<int>& d1,
                                                 const std::vector<int>& s,
                                                 const std::vector<Structure>& candidate_targets);

// Free model on a finite generator set, by congruence closure iterated to a
// fixpoint: closes under all symbol applications, merges equation
// instances, and rebuilds congruence. `class_budget` bounds the number of
// distinct classes; non-stabilization within it is reported, not decided.
struct FreeStructureResult {
  bool stabilized = false;
  Structure structure;            // valid when stabilized
  std::vector<int> generator_class;
  std::vector<int> growth;        // class counts per round
};
FreeStructureResult free_structure_bounded(const Theory& e, int generators, int class_budget,
                                           const Config& cfg = Config::desk());

// Orthogonality of A against h: P -> W: precomposition with h must be a
// bijection Hom(W, A) -> Hom(P, A). Computed by full enumeration.
bool orthogonality_check(const Language& l, const Structure& a, const Structure& p,
                         const Structure& w, const std::vector<int>& h);

// Variant whose source is the free structure on k generators, kept
// symbolic: Hom(F(k), A) ≅ A^k by adjunction, and precomposition with
// h: F(k) -> W evaluates morphisms at the generator images.
bool orthogonality_check_free_source(const Language& l, const Structure& a, const Structure& w,
                                     const std::vector<int>& generator_images);

// Theory term parser for the file format: (sym NAME), (map [i ...] from OUT
// to IN), (pow TERM Z), (comp TERM [TERM ...]).
TermPtr parse_term(const std::string& text);

}  // namespace catlab

#endif  // CATLAB_EQUATIONAL_HPP_
