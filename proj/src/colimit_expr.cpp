#include "catlab/colimit_expr.hpp"

#include <algorithm>

namespace catlab {

int ColimitExpression::depth() const {
  if (is_leaf()) return 0;
  int d = 0;
  for (const auto& v : vertices) d = std::max(d, v->depth());
  return d + 1;
}

ExprPtr ColimitExpression::leaf(int object) {
  auto e = std::make_shared<ColimitExpression>();
  e->representable = object;
  return e;
}

ExprPtr ColimitExpression::colim(FinCategory shape, std::vector<ExprPtr> vertices,
                                 std::vector<std::vector<std::vector<int>>> edges) {
  auto e = std::make_shared<ColimitExpression>();
  e->shape = std::move(shape);
  e->vertices = std::move(vertices);
  e->edges = std::move(edges);
  return e;
}

SetFunctor evaluate_expression(const std::shared_ptr<const FinCategory>& base,
                               const ColimitExpression& e) {
  const FinCategory& c = *base;
  if (e.is_leaf()) return SetFunctor::representable_presheaf(base, e.representable);
  const FinCategory& s = e.shape;
  if (static_cast<int>(e.vertices.size()) != s.num_objects() ||
      static_cast<int>(e.edges.size()) != s.num_morphisms())
    throw ValidationError("ExpressionShape", "vertex/edge counts do not match the shape");
  std::vector<SetFunctor> vals;
  vals.reserve(e.vertices.size());
  for (const auto& v : e.vertices) vals.push_back(evaluate_expression(base, *v));
  for (int m = 0; m < s.num_morphisms(); ++m)
    if (!is_natural_transformation(vals[s.src(m)], vals[s.tgt(m)], e.edges[m]))
      throw ValidationError("ExpressionShape",
                            "edge at " + s.morphism_name(m) + " is not a natural transformation");
  for (int f = 0; f < s.num_morphisms(); ++f)
    for (int g = 0; g < s.num_morphisms(); ++g) {
      if (s.tgt(f) != s.src(g)) continue;
      int gf = s.compose(g, f);
      for (int d = 0; d < c.num_objects(); ++d)
        for (int x = 0; x < vals[s.src(f)].carrier(d); ++x)
          if (e.edges[gf][d][x] != e.edges[g][d][e.edges[f][d][x]])
            throw ValidationError("ExpressionShape", "edges do not respect composition at " +
                                                         s.morphism_name(g) + "∘" +
                                                         s.morphism_name(f));
    }

  // pointwise colimits, then the induced contravariant actions
  auto shape_ptr = std::make_shared<FinCategory>(s);
  std::vector<ColimitResult> cols(c.num_objects());
  for (int d = 0; d < c.num_objects(); ++d) {
    std::vector<int> carriers(s.num_objects());
    for (int u = 0; u < s.num_objects(); ++u) carriers[u] = vals[u].carrier(d);
    std::vector<std::vector<int>> actions(s.num_morphisms());
    for (int m = 0; m < s.num_morphisms(); ++m) actions[m] = e.edges[m][d];
    cols[d] = colimit(SetFunctor(shape_ptr, Variance::Covariant, std::move(carriers),
                                 std::move(actions)));
  }
  std::vector<int> carriers(c.num_objects());
  for (int d = 0; d < c.num_objects(); ++d) carriers[d] = cols[d].size;
  std::vector<std::vector<int>> actions(c.num_morphisms());
  for (int g = 0; g < c.num_morphisms(); ++g) {
    // contravariant: from the value at tgt(g) to the value at src(g)
    int dt = c.tgt(g), ds = c.src(g);
    actions[g].assign(cols[dt].size, -1);
    for (int u = 0; u < s.num_objects(); ++u)
      for (int x = 0; x < vals[u].carrier(dt); ++x) {
        int cls = cols[dt].cocone.legs[u][x];
        int cls2 = cols[ds].cocone.legs[u][vals[u].apply(g, x)];
        if (actions[g][cls] >= 0 && actions[g][cls] != cls2)
          throw std::logic_error("pointwise colimit action not well-defined");
        actions[g][cls] = cls2;
      }
    for (int v : actions[g])
      if (v < 0) throw std::logic_error("colimit class with no generator");
  }
  return SetFunctor(base, Variance::Contravariant, std::move(carriers), std::move(actions));
}

ExprPtr density_presentation(const SetFunctor& p) {
  ElementsCategory el = category_of_elements(p);
  const FinCategory& c = p.base();
  FinCategory shape = opposite(el.total);
  std::vector<ExprPtr> vertices(shape.num_objects());
  for (int i = 0; i < shape.num_objects(); ++i)
    vertices[i] = ColimitExpression::leaf(el.elements[i].first);
  // el-morphism m: (c,x) -> (c',x') with underlying f: c' -> c appears in
  // El(P)^op as (c',x') -> (c,x); its edge is y(f): y(c') -> y(c), which is
  // post-composition with f on hom(d, c').
  std::vector<std::vector<std::vector<int>>> edges(shape.num_morphisms());
  for (int m = 0; m < shape.num_morphisms(); ++m) {
    int f = el.underlying[m];
    int csrc = c.src(f);
    int ctgt = c.tgt(f);
    edges[m].resize(c.num_objects());
    for (int d = 0; d < c.num_objects(); ++d) {
      const auto& dom = c.hom(d, csrc);
      const auto& cod = c.hom(d, ctgt);
      edges[m][d].resize(dom.size());
      for (size_t i = 0; i < dom.size(); ++i) {
        int img = c.compose(f, dom[i]);
        edges[m][d][i] = static_cast<int>(std::find(cod.begin(), cod.end(), img) - cod.begin());
      }
    }
  }
  return ColimitExpression::colim(std::move(shape), std::move(vertices), std::move(edges));
}

}  // namespace catlab
