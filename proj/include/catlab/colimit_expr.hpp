// Colimit expressions: trees of iterated colimits of representables inside
// a presheaf category, with exact pointwise evaluation. Used for closure
// provenance and density presentations.
#ifndef CATLAB_COLIMIT_EXPR_HPP_
#define CATLAB_COLIMIT_EXPR_HPP_

#include <memory>
#include <vector>

#include "catlab/fincat.hpp"
#include "catlab/setfunctor.hpp"

namespace catlab {

struct ColimitExpression;
using ExprPtr = std::shared_ptr<const ColimitExpression>;

// Leaf: a representable y(object). Node: the colimit over `shape` of the
// diagram with the given vertex expressions and, for every shape morphism,
// natural-transformation data between the evaluated sub-expressions
// (component tables indexed by base object).
struct ColimitExpression {
  int representable = -1;
  FinCategory shape;
  std::vector<ExprPtr> vertices;
  std::vector<std::vector<std::vector<int>>> edges;

  bool is_leaf() const { return representable >= 0; }
  int depth() const;

  static ExprPtr leaf(int object);
  static ExprPtr colim(FinCategory shape, std::vector<ExprPtr> vertices,
                       std::vector<std::vector<std::vector<int>>> edges);
};

// Bottom-up evaluation via pointwise colimits; validates that every edge is
// a natural transformation and that the diagram respects the shape's
// composition table.
SetFunctor evaluate_expression(const std::shared_ptr<const FinCategory>& base, const ColimitExpression& e);

// The canonical density presentation of P: the conical colimit over
// El(P)^op of the representables y(c), one vertex per element (c, x).
// Its evaluation is isomorphic to P (presheaf_iso is the oracle).
ExprPtr density_presentation(const SetFunctor& p);

}  // namespace catlab

#endif  // CATLAB_COLIMIT_EXPR_HPP_
