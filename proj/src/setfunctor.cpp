#include "catlab/setfunctor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace catlab {

SetFunctor::SetFunctor(std::shared_ptr<const FinCategory> base, Variance variance,
                       std::vector<int> carriers, std::vector<std::vector<int>> actions)
    : base_(std::move(base)),
      variance_(variance),
      carriers_(std::move(carriers)),
      actions_(std::move(actions)) {
  check();
}

SetFunctor::SetFunctor(const FinCategory& base, Variance variance, std::vector<int> carriers,
                       std::vector<std::vector<int>> actions)
    : SetFunctor(std::make_shared<FinCategory>(base), variance, std::move(carriers),
                 std::move(actions)) {}

void SetFunctor::check() const {
  const FinCategory& c = *base_;
  if (static_cast<int>(carriers_.size()) != c.num_objects())
    throw ValidationError("FunctorShape", "carrier count does not match object count");
  if (static_cast<int>(actions_.size()) != c.num_morphisms())
    throw ValidationError("FunctorShape", "action count does not match morphism count");
  for (int m = 0; m < c.num_morphisms(); ++m) {
    int s = variance_src(m), t = variance_tgt(m);
    if (static_cast<int>(actions_[m].size()) != carriers_[s])
      throw ValidationError("FunctorShape", "action of " + c.morphism_name(m) + " has wrong domain");
    for (int v : actions_[m])
      if (v < 0 || v >= carriers_[t])
        throw ValidationError("FunctorShape", "action of " + c.morphism_name(m) + " lands outside carrier");
  }
  for (int o = 0; o < c.num_objects(); ++o) {
    const auto& a = actions_[c.identity(o)];
    for (int x = 0; x < carriers_[o]; ++x)
      if (a[x] != x)
        throw ValidationError("FunctorShape", "identity of " + c.object_name(o) + " does not act trivially");
  }
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int g = 0; g < c.num_morphisms(); ++g) {
      if (c.tgt(f) != c.src(g)) continue;
      int gf = c.compose(g, f);
      // covariant: act(gf) = act(g)∘act(f); contravariant: act(gf) = act(f)∘act(g)
      int first = variance_ == Variance::Covariant ? f : g;
      int second = variance_ == Variance::Covariant ? g : f;
      for (int x = 0; x < carriers_[variance_src(first)]; ++x)
        if (actions_[gf][x] != actions_[second][actions_[first][x]])
          throw ValidationError("FunctorShape", "functoriality fails at " + c.morphism_name(g) + "∘" +
                                                    c.morphism_name(f));
    }
}

SetFunctor SetFunctor::constant(std::shared_ptr<const FinCategory> base, Variance v, int size) {
  const FinCategory& c = *base;
  std::vector<int> carriers(c.num_objects(), size);
  std::vector<std::vector<int>> actions(c.num_morphisms());
  for (auto& a : actions) {
    a.resize(size);
    std::iota(a.begin(), a.end(), 0);
  }
  return SetFunctor(std::move(base), v, std::move(carriers), std::move(actions));
}

SetFunctor SetFunctor::representable_covariant(std::shared_ptr<const FinCategory> base, int c0) {
  const FinCategory& c = *base;
  std::vector<int> carriers(c.num_objects());
  for (int d = 0; d < c.num_objects(); ++d) carriers[d] = static_cast<int>(c.hom(c0, d).size());
  std::vector<std::vector<int>> actions(c.num_morphisms());
  for (int m = 0; m < c.num_morphisms(); ++m) {
    const auto& dom = c.hom(c0, c.src(m));
    const auto& cod = c.hom(c0, c.tgt(m));
    actions[m].resize(dom.size());
    for (size_t i = 0; i < dom.size(); ++i) {
      int img = c.compose(m, dom[i]);
      actions[m][i] = static_cast<int>(std::find(cod.begin(), cod.end(), img) - cod.begin());
    }
  }
  return SetFunctor(std::move(base), Variance::Covariant, std::move(carriers), std::move(actions));
}

SetFunctor SetFunctor::representable_presheaf(std::shared_ptr<const FinCategory> base, int c0) {
  const FinCategory& c = *base;
  std::vector<int> carriers(c.num_objects());
  for (int d = 0; d < c.num_objects(); ++d) carriers[d] = static_cast<int>(c.hom(d, c0).size());
  std::vector<std::vector<int>> actions(c.num_morphisms());
  for (int m = 0; m < c.num_morphisms(); ++m) {
    // contravariant: action from hom(tgt m, c0) to hom(src m, c0), precompose with m
    const auto& dom = c.hom(c.tgt(m), c0);
    const auto& cod = c.hom(c.src(m), c0);
    actions[m].resize(dom.size());
    for (size_t i = 0; i < dom.size(); ++i) {
      int img = c.compose(dom[i], m);
      actions[m][i] = static_cast<int>(std::find(cod.begin(), cod.end(), img) - cod.begin());
    }
  }
  return SetFunctor(std::move(base), Variance::Contravariant, std::move(carriers),
                    std::move(actions));
}

int SetFunctor::total_size() const {
  int t = 0;
  for (int x : carriers_) t += x;
  return t;
}

bool SetFunctor::same_base(const SetFunctor& other) const {
  return base_ == other.base_ || base_->same_tables(other.base());
}

std::string SetFunctor::digest_string() const {
  std::ostringstream os;
  os << (variance_ == Variance::Covariant ? "cov;" : "con;");
  for (int v : carriers_) os << v << ',';
  os << ';';
  for (const auto& a : actions_) {
    for (int v : a) os << v << ',';
    os << '|';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// cones / cocones

bool cocone_is_natural(const SetFunctor& f, const Cocone& c) {
  const FinCategory& b = f.base();
  for (int o = 0; o < b.num_objects(); ++o) {
    if (static_cast<int>(c.legs[o].size()) != f.carrier(o)) return false;
    for (int v : c.legs[o])
      if (v < 0 || v >= c.apex_size) return false;
  }
  for (int m = 0; m < b.num_morphisms(); ++m)
    for (int x = 0; x < f.carrier(b.src(m)); ++x)
      if (c.legs[b.tgt(m)][f.apply(m, x)] != c.legs[b.src(m)][x]) return false;
  return true;
}

bool cone_is_natural(const SetFunctor& f, const Cone& c) {
  const FinCategory& b = f.base();
  for (int o = 0; o < b.num_objects(); ++o) {
    if (static_cast<int>(c.legs[o].size()) != c.apex_size) return false;
    for (int v : c.legs[o])
      if (v < 0 || v >= f.carrier(o)) return false;
  }
  for (int m = 0; m < b.num_morphisms(); ++m)
    for (int a = 0; a < c.apex_size; ++a)
      if (f.apply(m, c.legs[b.src(m)][a]) != c.legs[b.tgt(m)][a]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// limit / colimit

LimitResult limit(const SetFunctor& f) {
  const FinCategory& b = f.base();
  const int no = b.num_objects();
  LimitResult out;
  if (no == 0) {
    // the empty limit is a singleton
    out.size = 1;
    out.families = {{}};
    out.cone.apex_size = 1;
    out.cone.legs = {};
    return out;
  }
  std::vector<int> fam(no, 0);
  bool any_empty = false;
  for (int o = 0; o < no; ++o)
    if (f.carrier(o) == 0) any_empty = true;
  if (!any_empty) {
    while (true) {
      bool ok = true;
      for (int m = 0; m < b.num_morphisms() && ok; ++m)
        ok = f.apply(m, fam[b.src(m)]) == fam[b.tgt(m)];
      if (ok) out.families.push_back(fam);
      // lexicographic odometer, object 0 most significant
      int i = no - 1;
      while (i >= 0) {
        if (++fam[i] < f.carrier(i)) break;
        fam[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }
  out.size = static_cast<int>(out.families.size());
  out.cone.apex_size = out.size;
  out.cone.legs.assign(no, {});
  for (int o = 0; o < no; ++o) {
    out.cone.legs[o].resize(out.size);
    for (int k = 0; k < out.size; ++k) out.cone.legs[o][k] = out.families[k][o];
  }
  return out;
}

ColimitResult colimit(const SetFunctor& f) {
  const FinCategory& b = f.base();
  const int no = b.num_objects();
  std::vector<int> offset(no + 1, 0);
  for (int o = 0; o < no; ++o) offset[o + 1] = offset[o] + f.carrier(o);
  const int total = offset[no];
  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int m = 0; m < b.num_morphisms(); ++m)
    for (int x = 0; x < f.carrier(b.src(m)); ++x) {
      int a = find(offset[b.src(m)] + x);
      int c = find(offset[b.tgt(m)] + f.apply(m, x));
      if (a != c) parent[std::max(a, c)] = std::min(a, c);
    }
  std::vector<int> cls(total, -1);
  int next = 0;
  for (int i = 0; i < total; ++i) {
    int r = find(i);
    if (cls[r] < 0) cls[r] = next++;
    cls[i] = cls[r];
  }
  ColimitResult out;
  out.size = next;
  out.cocone.apex_size = next;
  out.cocone.legs.assign(no, {});
  for (int o = 0; o < no; ++o) {
    out.cocone.legs[o].resize(f.carrier(o));
    for (int x = 0; x < f.carrier(o); ++x) out.cocone.legs[o][x] = cls[offset[o] + x];
  }
  return out;
}

// ---------------------------------------------------------------------------
// universality

namespace {

// Iterates over all vectors of length `len` with entries in [0, radix),
// lexicographically; `body` returns false to abort. Returns false on abort.
bool for_all_tuples(int len, int radix, IterationGuard& guard,
                    const std::function<bool(const std::vector<int>&)>& body) {
  if (len > 0 && radix == 0) return true;  // no tuples
  std::vector<int> t(len, 0);
  while (true) {
    guard.tick();
    if (!body(t)) return false;
    int i = len - 1;
    while (i >= 0) {
      if (++t[i] < radix) break;
      t[i] = 0;
      --i;
    }
    if (i < 0) return true;
  }
}

}  // namespace

bool verify_limit_universality(const SetFunctor& f, const LimitResult& lim, int max_apex,
                               long long iteration_cap) {
  const FinCategory& b = f.base();
  const int no = b.num_objects();
  IterationGuard guard(iteration_cap);
  if (!cone_is_natural(f, lim.cone)) return false;
  for (int apex = 0; apex <= max_apex; ++apex) {
    // A cone with apex [a] is an a-indexed family of compatible tuples; we
    // enumerate every leg family (flat layout: slot o*apex + i) and require
    // the natural ones to factor exactly once.
    bool carriers_fit = true;
    for (int o = 0; o < no; ++o)
      if (apex > 0 && f.carrier(o) == 0) carriers_fit = false;

    auto check_flat = [&](const std::vector<int>& flat) {
      Cone cand;
      cand.apex_size = apex;
      cand.legs.assign(no, std::vector<int>(apex));
      for (int o = 0; o < no; ++o)
        for (int a = 0; a < apex; ++a) cand.legs[o][a] = flat[o * apex + a];
      if (!cone_is_natural(f, cand)) return true;  // not a cone; nothing to factor
      int count = 0;
      for_all_tuples(apex, lim.size, guard, [&](const std::vector<int>& u) {
        bool match = true;
        for (int a = 0; a < apex && match; ++a)
          for (int o = 0; o < no && match; ++o)
            match = lim.cone.legs[o][u[a]] == cand.legs[o][a];
        if (match) ++count;
        return true;
      });
      return count == 1;
    };

    if (!carriers_fit) continue;  // no leg families exist at this apex
    // enumerate flat leg vectors with per-slot radix carrier(o); done via a
    // mixed-radix odometer
    std::vector<int> flat(static_cast<size_t>(no) * apex, 0);
    while (true) {
      guard.tick();
      if (!check_flat(flat)) return false;
      int i = static_cast<int>(flat.size()) - 1;
      while (i >= 0) {
        if (++flat[i] < f.carrier(i / apex)) break;
        flat[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }
  return true;
}

bool verify_colimit_universality(const SetFunctor& f, const ColimitResult& col, int max_apex,
                                 long long iteration_cap) {
  const FinCategory& b = f.base();
  const int no = b.num_objects();
  IterationGuard guard(iteration_cap);
  if (!cocone_is_natural(f, col.cocone)) return false;
  std::vector<int> offset(no + 1, 0);
  for (int o = 0; o < no; ++o) offset[o + 1] = offset[o] + f.carrier(o);
  const int total = offset[no];
  for (int apex = 0; apex <= max_apex; ++apex) {
    if (apex == 0 && total > 0) continue;  // no cocones with empty apex
    bool aborted = !for_all_tuples(total, apex, guard, [&](const std::vector<int>& flat) {
      Cocone cand;
      cand.apex_size = apex;
      cand.legs.assign(no, {});
      for (int o = 0; o < no; ++o)
        cand.legs[o] = std::vector<int>(flat.begin() + offset[o], flat.begin() + offset[o + 1]);
      if (!cocone_is_natural(f, cand)) return true;
      int count = 0;
      for_all_tuples(col.size, apex, guard, [&](const std::vector<int>& u) {
        bool match = true;
        for (int o = 0; o < no && match; ++o)
          for (int x = 0; x < f.carrier(o) && match; ++x)
            match = u[col.cocone.legs[o][x]] == cand.legs[o][x];
        if (match) ++count;
        return true;
      });
      return count == 1;
    });
    if (aborted) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// category of elements

int ElementsCategory::object_index(int c, int x) const {
  for (size_t i = 0; i < elements.size(); ++i)
    if (elements[i].first == c && elements[i].second == x) return static_cast<int>(i);
  return -1;
}

ElementsCategory category_of_elements(const SetFunctor& m) {
  if (m.variance() != Variance::Contravariant)
    throw ValidationError("VarianceMismatch", "category_of_elements expects a contravariant weight");
  const FinCategory& c = m.base();
  CategoryBuilder b;
  std::vector<std::pair<int, int>> elements;
  std::vector<int> underlying;
  std::vector<std::vector<int>> obj_of(c.num_objects());
  std::vector<int> flat_offset(c.num_objects() + 1, 0);
  for (int o = 0; o < c.num_objects(); ++o) {
    flat_offset[o + 1] = flat_offset[o] + m.carrier(o);
    obj_of[o].resize(m.carrier(o));
    for (int x = 0; x < m.carrier(o); ++x) {
      obj_of[o][x] = b.add_object("(" + c.object_name(o) + "," + std::to_string(x) + ")");
      elements.emplace_back(o, x);
    }
  }
  // one El-morphism per (f: c' -> c in base, x in M(c)); goes (c,x) -> (c',Mf(x))
  std::map<std::pair<int, int>, int> em_ix;
  std::vector<std::pair<int, int>> ems;
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int x = 0; x < m.carrier(c.tgt(f)); ++x) {
      int src_el = obj_of[c.tgt(f)][x];
      int tgt_el = obj_of[c.src(f)][m.apply(f, x)];
      em_ix[{f, x}] = static_cast<int>(ems.size());
      ems.emplace_back(f, x);
      std::string nm = c.morphism_name(f) + "@" + std::to_string(x);
      if (c.is_identity(f))
        b.add_identity(src_el, nm);
      else
        b.add_morphism(nm, src_el, tgt_el);
      underlying.push_back(f);
    }
  // composition: (g, Mf(x)) after (f, x) = (f∘g, x) — underlying morphisms
  // compose the other way around in the base, matching the projection into
  // base^op.
  for (size_t i = 0; i < ems.size(); ++i) {
    auto [f, x] = ems[i];
    int fx = m.apply(f, x);
    for (int g = 0; g < c.num_morphisms(); ++g) {
      if (c.tgt(g) != c.src(f)) continue;  // need g: c'' -> c' where f: c' -> c
      int j = em_ix.at({g, fx});
      int k = em_ix.at({c.compose(f, g), x});  // f∘g : c'' -> c
      b.set_compose(static_cast<int>(i), j, k);
    }
  }
  FinCategory total = b.validate();
  // projection into base^op: object (c,x) -> c, morphism (f,x) -> f
  std::vector<int> omap(elements.size());
  for (size_t i = 0; i < elements.size(); ++i) omap[i] = elements[i].first;
  FinFunctor projection(total, opposite(c), omap, underlying);
  std::vector<int> flat(flat_offset[c.num_objects()]);
  std::iota(flat.begin(), flat.end(), 0);
  return ElementsCategory{std::move(total), std::move(projection), std::move(elements),
                          std::move(flat), std::move(underlying)};
}

// ---------------------------------------------------------------------------
// weighted colimit via the elements construction

WeightedColimitResult weighted_colimit(const SetFunctor& m, const SetFunctor& h) {
  if (!m.same_base(h)) throw ValidationError("BaseMismatch", "weight and diagram live on different categories");
  if (m.variance() != Variance::Contravariant || h.variance() != Variance::Covariant)
    throw ValidationError("VarianceMismatch", "weighted_colimit expects contravariant M and covariant H");
  ElementsCategory el = category_of_elements(m);
  auto shape = std::make_shared<FinCategory>(opposite(el.total));
  // diagram on El(M)^op: vertex (c,x) -> H(c); edge with underlying f -> H(f)
  std::vector<int> carriers(shape->num_objects());
  for (int i = 0; i < shape->num_objects(); ++i) carriers[i] = h.carrier(el.elements[i].first);
  std::vector<std::vector<int>> actions(shape->num_morphisms());
  for (int e = 0; e < shape->num_morphisms(); ++e) actions[e] = h.action(el.underlying[e]);
  WeightedColimitResult out{0,
                            SetFunctor(shape, Variance::Covariant, std::move(carriers),
                                       std::move(actions)),
                            {},
                            el.elements};
  out.colim = colimit(out.reindexed);
  out.size = out.colim.size;
  return out;
}

// ---------------------------------------------------------------------------
// presheaf isomorphism search

namespace {

bool check_assigned(const SetFunctor& p, const SetFunctor& q,
                    const std::vector<std::vector<int>>& comp, const std::vector<bool>& have) {
  const FinCategory& b = p.base();
  for (int m = 0; m < b.num_morphisms(); ++m) {
    int s = p.variance_src(m), t = p.variance_tgt(m);
    if (!have[s] || !have[t]) continue;
    for (int x = 0; x < p.carrier(s); ++x)
      if (comp[t][p.apply(m, x)] != q.apply(m, comp[s][x])) return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<std::vector<int>>> presheaf_iso(const SetFunctor& p,
                                                          const SetFunctor& q) {
  if (!p.same_base(q)) throw ValidationError("BaseMismatch", "presheaf_iso over different bases");
  if (p.variance() != q.variance())
    throw ValidationError("VarianceMismatch", "presheaf_iso across variances");
  const FinCategory& b = p.base();
  const int no = b.num_objects();
  for (int o = 0; o < no; ++o)
    if (p.carrier(o) != q.carrier(o)) return std::nullopt;
  if (no == 0) return std::vector<std::vector<int>>{};

  std::vector<std::vector<int>> comp(no);
  std::vector<bool> have(no, false);
  // order objects by decreasing carrier to fail fast
  std::vector<int> order(no);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int c) { return p.carrier(a) > p.carrier(c); });

  std::function<bool(int)> rec = [&](int k) -> bool {
    if (k == no) return true;
    int o = order[k];
    std::vector<int> perm(p.carrier(o));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      comp[o] = perm;
      have[o] = true;
      if (check_assigned(p, q, comp, have) && rec(k + 1)) return true;
      have[o] = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };
  if (rec(0)) return comp;
  return std::nullopt;
}

bool is_natural_transformation(const SetFunctor& p, const SetFunctor& q,
                               const std::vector<std::vector<int>>& components) {
  const FinCategory& b = p.base();
  for (int o = 0; o < b.num_objects(); ++o) {
    if (static_cast<int>(components[o].size()) != p.carrier(o)) return false;
    for (int v : components[o])
      if (v < 0 || v >= q.carrier(o)) return false;
  }
  for (int m = 0; m < b.num_morphisms(); ++m) {
    int s = p.variance_src(m), t = p.variance_tgt(m);
    for (int x = 0; x < p.carrier(s); ++x)
      if (components[t][p.apply(m, x)] != q.apply(m, components[s][x])) return false;
  }
  return true;
}

std::vector<std::vector<std::vector<int>>> natural_transformations(const SetFunctor& p,
                                                                   const SetFunctor& q,
                                                                   long long iteration_cap) {
  if (!p.same_base(q)) throw ValidationError("BaseMismatch", "natural_transformations over different bases");
  const FinCategory& b = p.base();
  const int no = b.num_objects();
  IterationGuard guard(iteration_cap);
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> comp(no);
  std::vector<bool> have(no, false);

  std::function<void(int)> rec = [&](int k) {
    if (k == no) {
      out.push_back(comp);
      return;
    }
    // enumerate all functions P(k) -> Q(k) lexicographically
    int n = p.carrier(k), m = q.carrier(k);
    if (n == 0) {
      comp[k] = {};
      have[k] = true;
      if (check_assigned(p, q, comp, have)) rec(k + 1);
      have[k] = false;
      return;
    }
    if (m == 0) return;  // no function from nonempty to empty
    std::vector<int> f(n, 0);
    while (true) {
      guard.tick();
      comp[k] = f;
      have[k] = true;
      if (check_assigned(p, q, comp, have)) rec(k + 1);
      have[k] = false;
      int i = n - 1;
      while (i >= 0) {
        if (++f[i] < m) break;
        f[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
  };
  rec(0);
  return out;
}

SetFunctor restrict_along(const SetFunctor& f, const FinFunctor& j,
                          std::shared_ptr<const FinCategory> domain) {
  const FinCategory& d = j.domain();
  std::vector<int> carriers(d.num_objects());
  for (int o = 0; o < d.num_objects(); ++o) carriers[o] = f.carrier(j.on_object(o));
  std::vector<std::vector<int>> actions(d.num_morphisms());
  for (int m = 0; m < d.num_morphisms(); ++m) actions[m] = f.action(j.on_morphism(m));
  return SetFunctor(std::move(domain), f.variance(), std::move(carriers), std::move(actions));
}

std::string iso_prehash(const SetFunctor& f) {
  std::vector<int> sizes = f.carriers();
  std::ostringstream os;
  for (int v : sizes) os << v << ',';
  os << ';';
  // per-morphism invariant: (src size, tgt size, image size, fiber profile)
  std::vector<std::string> tags;
  for (int m = 0; m < f.base().num_morphisms(); ++m) {
    std::vector<int> fiber(f.carrier(f.variance_tgt(m)), 0);
    for (int v : f.action(m)) fiber[v]++;
    std::sort(fiber.begin(), fiber.end());
    std::ostringstream t;
    t << f.variance_src(m) << '>' << f.variance_tgt(m) << ':';
    for (int v : fiber) t << v << ',';
    tags.push_back(t.str());
  }
  std::sort(tags.begin(), tags.end());
  for (const auto& t : tags) os << t << '|';
  return os.str();
}

SetFunctor relabel(const SetFunctor& f, const std::vector<std::vector<int>>& perms) {
  std::vector<std::vector<int>> actions(f.base().num_morphisms());
  for (int m = 0; m < f.base().num_morphisms(); ++m) {
    int s = f.variance_src(m), t = f.variance_tgt(m);
    actions[m].resize(f.carrier(s));
    for (int x = 0; x < f.carrier(s); ++x) actions[m][perms[s][x]] = perms[t][f.apply(m, x)];
  }
  return SetFunctor(f.base_ptr(), f.variance(), f.carriers(), std::move(actions));
}

}  // namespace catlab
