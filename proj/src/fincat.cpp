#include "catlab/fincat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace catlab {

// ---------------------------------------------------------------------------
// FinCategory validation

FinCategory FinCategory::validate(const RawCategory& raw) {
  FinCategory c;
  std::map<std::string, int> obj_ix, mor_ix;
  for (const auto& o : raw.objects) {
    if (obj_ix.count(o)) throw ValidationError("DuplicateObject", o);
    obj_ix[o] = static_cast<int>(c.object_names_.size());
    c.object_names_.push_back(o);
  }
  for (const auto& m : raw.morphisms) {
    if (mor_ix.count(m.name)) throw ValidationError("DuplicateMorphism", m.name);
    if (!obj_ix.count(m.src))
      throw ValidationError("SourceTargetMismatch", "morphism " + m.name + ": unknown source " + m.src);
    if (!obj_ix.count(m.tgt))
      throw ValidationError("SourceTargetMismatch", "morphism " + m.name + ": unknown target " + m.tgt);
    mor_ix[m.name] = static_cast<int>(c.morphism_names_.size());
    c.morphism_names_.push_back(m.name);
    c.src_.push_back(obj_ix[m.src]);
    c.tgt_.push_back(obj_ix[m.tgt]);
  }
  const int nm = c.num_morphisms();
  c.identity_.assign(c.object_names_.size(), -1);
  for (const auto& [obj, mor] : raw.identities) {
    if (!obj_ix.count(obj)) throw ValidationError("BadIdentity", "unknown object " + obj);
    if (!mor_ix.count(mor)) throw ValidationError("BadIdentity", "unknown morphism " + mor);
    int o = obj_ix[obj], m = mor_ix[mor];
    if (c.src_[m] != o || c.tgt_[m] != o)
      throw ValidationError("BadIdentity", "identity of " + obj + " must be an endomorphism, got " + mor);
    c.identity_[o] = m;
  }
  for (int o = 0; o < c.num_objects(); ++o)
    if (c.identity_[o] < 0) throw ValidationError("BadIdentity", "no identity declared for " + c.object_names_[o]);

  c.table_.assign(static_cast<size_t>(nm) * nm, -1);
  for (const auto& e : raw.compose) {
    if (!mor_ix.count(e.first)) throw ValidationError("MissingComposite", "unknown morphism " + e.first);
    if (!mor_ix.count(e.then)) throw ValidationError("MissingComposite", "unknown morphism " + e.then);
    if (!mor_ix.count(e.equals)) throw ValidationError("MissingComposite", "unknown morphism " + e.equals);
    int f = mor_ix[e.first], g = mor_ix[e.then], h = mor_ix[e.equals];
    if (c.tgt_[f] != c.src_[g])
      throw ValidationError("SourceTargetMismatch",
                            e.then + " after " + e.first + " is not composable");
    if (c.src_[h] != c.src_[f] || c.tgt_[h] != c.tgt_[g])
      throw ValidationError("SourceTargetMismatch",
                            e.then + "∘" + e.first + " = " + e.equals + " has wrong endpoints");
    int& slot = c.table_[f * nm + g];
    if (slot >= 0 && slot != h)
      throw ValidationError("MissingComposite",
                            "conflicting entries for " + e.then + "∘" + e.first);
    slot = h;
  }

  // Entries forced by the unit laws may be omitted in the input.
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (c.tgt_[f] != c.src_[g]) continue;
      int& slot = c.table_[f * nm + g];
      if (slot >= 0) continue;
      if (c.identity_[c.src_[g]] == g) slot = f;
      if (c.identity_[c.tgt_[f]] == f) slot = g;
    }

  // Composition must be defined for exactly the composable pairs.
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      bool composable = c.tgt_[f] == c.src_[g];
      int entry = c.table_[f * nm + g];
      if (composable && entry < 0)
        throw ValidationError("MissingComposite",
                              c.morphism_names_[g] + "∘" + c.morphism_names_[f]);
      if (!composable && entry >= 0)
        throw ValidationError("SourceTargetMismatch",
                              "spurious composite " + c.morphism_names_[g] + "∘" + c.morphism_names_[f]);
    }

  // Unit laws.
  for (int m = 0; m < nm; ++m) {
    if (c.compose(m, c.identity_[c.src_[m]]) != m)
      throw ValidationError("BadIdentity", "right unit fails at " + c.morphism_names_[m]);
    if (c.compose(c.identity_[c.tgt_[m]], m) != m)
      throw ValidationError("BadIdentity", "left unit fails at " + c.morphism_names_[m]);
  }

  // Associativity over every composable triple.
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (c.tgt_[f] != c.src_[g]) continue;
      int gf = c.compose(g, f);
      for (int h = 0; h < nm; ++h) {
        if (c.tgt_[g] != c.src_[h]) continue;
        int hg = c.compose(h, g);
        if (c.compose(h, gf) != c.compose(hg, f))
          throw ValidationError("NonAssociative",
                                "(" + c.morphism_names_[h] + "∘" + c.morphism_names_[g] + ")∘" +
                                    c.morphism_names_[f] + " ≠ " + c.morphism_names_[h] + "∘(" +
                                    c.morphism_names_[g] + "∘" + c.morphism_names_[f] + ")");
      }
    }

  c.finish_unchecked();
  return c;
}

void FinCategory::finish_unchecked() {
  const int no = num_objects();
  hom_.assign(static_cast<size_t>(no) * no, {});
  for (int m = 0; m < num_morphisms(); ++m) hom_[src_[m] * no + tgt_[m]].push_back(m);
}

std::optional<int> FinCategory::initial_object() const {
  for (int o = 0; o < num_objects(); ++o) {
    bool ok = true;
    for (int p = 0; p < num_objects() && ok; ++p) ok = hom(o, p).size() == 1;
    if (ok) return o;
  }
  return std::nullopt;
}

std::optional<int> FinCategory::terminal_object() const {
  for (int o = 0; o < num_objects(); ++o) {
    bool ok = true;
    for (int p = 0; p < num_objects() && ok; ++p) ok = hom(p, o).size() == 1;
    if (ok) return o;
  }
  return std::nullopt;
}

bool FinCategory::same_tables(const FinCategory& other) const {
  return src_ == other.src_ && tgt_ == other.tgt_ && identity_ == other.identity_ &&
         table_ == other.table_;
}

std::string FinCategory::digest_string() const {
  std::ostringstream os;
  os << num_objects() << ';' << num_morphisms() << ';';
  for (int m = 0; m < num_morphisms(); ++m) os << src_[m] << ',' << tgt_[m] << ';';
  for (int v : identity_) os << v << ';';
  for (int v : table_) os << v << ',';
  return os.str();
}

namespace {

// Encoding of a category under a given object permutation with morphisms
// renumbered by (src, tgt) blocks; within a block the morphism order is
// chosen greedily-lexicographically over all block permutations.
std::string encode_under(const FinCategory& c, const std::vector<int>& obj_perm) {
  const int no = c.num_objects(), nm = c.num_morphisms();
  // new object id -> old object id
  std::vector<int> old_of(no);
  for (int i = 0; i < no; ++i) old_of[obj_perm[i]] = i;

  // Collect morphisms into new (src,tgt) blocks, identities first.
  std::vector<std::vector<int>> blocks(static_cast<size_t>(no) * no);
  for (int m = 0; m < nm; ++m)
    blocks[obj_perm[c.src(m)] * no + obj_perm[c.tgt(m)]].push_back(m);
  for (auto& b : blocks)
    std::sort(b.begin(), b.end(), [&](int x, int y) {
      bool ix = c.is_identity(x), iy = c.is_identity(y);
      if (ix != iy) return ix;
      return x < y;
    });

  // Try all permutations of the non-identity part of every block and keep the
  // least encoding. Block sizes in our corpora are tiny, so this is cheap.
  std::string best;
  std::vector<std::vector<std::vector<int>>> block_orders;
  for (auto& b : blocks) {
    std::vector<std::vector<int>> orders;
    int fixed = 0;
    while (fixed < static_cast<int>(b.size()) && c.is_identity(b[fixed])) ++fixed;
    std::vector<int> tail(b.begin() + fixed, b.end());
    std::sort(tail.begin(), tail.end());
    do {
      std::vector<int> o(b.begin(), b.begin() + fixed);
      o.insert(o.end(), tail.begin(), tail.end());
      orders.push_back(o);
    } while (std::next_permutation(tail.begin(), tail.end()));
    if (orders.empty()) orders.push_back({});
    block_orders.push_back(std::move(orders));
  }
  std::vector<size_t> pick(block_orders.size(), 0);
  while (true) {
    std::vector<int> new_of_old(nm, -1);
    std::vector<int> old_of_new;
    old_of_new.reserve(nm);
    for (size_t b = 0; b < block_orders.size(); ++b)
      for (int m : block_orders[b][pick[b]]) {
        new_of_old[m] = static_cast<int>(old_of_new.size());
        old_of_new.push_back(m);
      }
    std::ostringstream os;
    os << no << '|' << nm << '|';
    for (int m : old_of_new) os << obj_perm[c.src(m)] << ',' << obj_perm[c.tgt(m)] << ';';
    for (int f : old_of_new)
      for (int g : old_of_new) {
        if (c.tgt(f) != c.src(g)) continue;
        os << new_of_old[c.compose(g, f)] << ',';
      }
    std::string enc = os.str();
    if (best.empty() || enc < best) best = enc;
    // advance the odometer
    size_t i = 0;
    while (i < pick.size()) {
      if (++pick[i] < block_orders[i].size()) break;
      pick[i] = 0;
      ++i;
    }
    if (i == pick.size()) break;
  }
  return best;
}

}  // namespace

std::string FinCategory::canonical_key() const {
  const int no = num_objects();
  std::vector<int> perm(no);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string enc = encode_under(*this, perm);
    if (best.empty() || enc < best) best = enc;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (best.empty()) best = "0|0|";
  return best;
}

// ---------------------------------------------------------------------------
// CategoryBuilder

int CategoryBuilder::add_object(const std::string& name) {
  raw_.objects.push_back(name);
  return static_cast<int>(raw_.objects.size()) - 1;
}

int CategoryBuilder::add_identity(int obj, const std::string& name) {
  raw_.morphisms.push_back({name, raw_.objects[obj], raw_.objects[obj]});
  raw_.identities.emplace_back(raw_.objects[obj], name);
  return static_cast<int>(raw_.morphisms.size()) - 1;
}

int CategoryBuilder::add_morphism(const std::string& name, int src, int tgt) {
  raw_.morphisms.push_back({name, raw_.objects[src], raw_.objects[tgt]});
  return static_cast<int>(raw_.morphisms.size()) - 1;
}

void CategoryBuilder::set_compose(int f_first, int g_then, int equals) {
  raw_.compose.push_back({raw_.morphisms[f_first].name, raw_.morphisms[g_then].name,
                          raw_.morphisms[equals].name});
}

FinCategory CategoryBuilder::validate() const { return FinCategory::validate(raw_); }

// ---------------------------------------------------------------------------
// FinFunctor

FinFunctor::FinFunctor(const FinCategory& dom, const FinCategory& cod,
                       std::vector<int> object_map, std::vector<int> morphism_map)
    : dom_(std::make_shared<FinCategory>(dom)),
      cod_(std::make_shared<FinCategory>(cod)),
      object_map_(std::move(object_map)),
      morphism_map_(std::move(morphism_map)) {
  if (static_cast<int>(object_map_.size()) != dom.num_objects() ||
      static_cast<int>(morphism_map_.size()) != dom.num_morphisms())
    throw ValidationError("FunctorShape", "object/morphism map sizes do not match the domain");
  for (int m = 0; m < dom.num_morphisms(); ++m) {
    int fm = morphism_map_[m];
    if (cod.src(fm) != object_map_[dom.src(m)] || cod.tgt(fm) != object_map_[dom.tgt(m)])
      throw ValidationError("FunctorShape", "image of " + dom.morphism_name(m) + " has wrong endpoints");
  }
  for (int o = 0; o < dom.num_objects(); ++o)
    if (morphism_map_[dom.identity(o)] != cod.identity(object_map_[o]))
      throw ValidationError("FunctorShape", "identity of " + dom.object_name(o) + " not preserved");
  for (int f = 0; f < dom.num_morphisms(); ++f)
    for (int g = 0; g < dom.num_morphisms(); ++g) {
      if (dom.tgt(f) != dom.src(g)) continue;
      if (morphism_map_[dom.compose(g, f)] != cod.compose(morphism_map_[g], morphism_map_[f]))
        throw ValidationError("FunctorShape", "composition not preserved at " + dom.morphism_name(g) +
                                                  "∘" + dom.morphism_name(f));
    }
}

bool FinFunctor::fully_faithful() const {
  const FinCategory& d = domain();
  const FinCategory& c = codomain();
  for (int a = 0; a < d.num_objects(); ++a)
    for (int b = 0; b < d.num_objects(); ++b) {
      const auto& ha = d.hom(a, b);
      const auto& hb = c.hom(object_map_[a], object_map_[b]);
      if (ha.size() != hb.size()) return false;
      std::vector<int> images;
      for (int m : ha) images.push_back(morphism_map_[m]);
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// opposite / product

FinCategory opposite(const FinCategory& c) {
  FinCategory o;
  o.object_names_ = c.object_names_;
  o.morphism_names_ = c.morphism_names_;
  o.src_ = c.tgt_;
  o.tgt_ = c.src_;
  o.identity_ = c.identity_;
  const int nm = c.num_morphisms();
  o.table_.assign(static_cast<size_t>(nm) * nm, -1);
  // In C^op, g∘f (f: a->b, g: b->c there) is f∘g computed in C.
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g)
      if (o.tgt_[f] == o.src_[g]) o.table_[f * nm + g] = c.table_[g * nm + f];
  o.finish_unchecked();
  return o;
}

FinCategory product_category(const FinCategory& c, const FinCategory& d) {
  FinCategory p;
  const int cm = c.num_morphisms(), dm = d.num_morphisms();
  for (int i = 0; i < c.num_objects(); ++i)
    for (int j = 0; j < d.num_objects(); ++j)
      p.object_names_.push_back("(" + c.object_name(i) + "," + d.object_name(j) + ")");
  auto obj = [&](int i, int j) { return i * d.num_objects() + j; };
  auto mor = [&](int f, int g) { return f * dm + g; };
  for (int f = 0; f < cm; ++f)
    for (int g = 0; g < dm; ++g) {
      p.morphism_names_.push_back("(" + c.morphism_name(f) + "," + d.morphism_name(g) + ")");
      p.src_.push_back(obj(c.src(f), d.src(g)));
      p.tgt_.push_back(obj(c.tgt(f), d.tgt(g)));
    }
  p.identity_.resize(p.object_names_.size());
  for (int i = 0; i < c.num_objects(); ++i)
    for (int j = 0; j < d.num_objects(); ++j)
      p.identity_[obj(i, j)] = mor(c.identity(i), d.identity(j));
  const int nm = cm * dm;
  p.table_.assign(static_cast<size_t>(nm) * nm, -1);
  for (int f1 = 0; f1 < cm; ++f1)
    for (int g1 = 0; g1 < dm; ++g1)
      for (int f2 = 0; f2 < cm; ++f2)
        for (int g2 = 0; g2 < dm; ++g2) {
          if (c.tgt(f1) != c.src(f2) || d.tgt(g1) != d.src(g2)) continue;
          p.table_[mor(f1, g1) * nm + mor(f2, g2)] = mor(c.compose(f2, f1), d.compose(g2, g1));
        }
  p.finish_unchecked();
  return p;
}

// ---------------------------------------------------------------------------
// Karoubi envelope: objects are idempotents e, hom(e,e') = {f | f = e'∘f∘e},
// with composition inherited from C. Over Set this is the Cauchy completion.

KaroubiEnvelope karoubi_envelope(const FinCategory& c) {
  std::vector<int> idem;
  for (int m = 0; m < c.num_morphisms(); ++m)
    if (c.is_idempotent(m)) idem.push_back(m);
  const int nq = static_cast<int>(idem.size());

  CategoryBuilder b;
  std::vector<int> qobj(nq);
  for (int i = 0; i < nq; ++i) qobj[i] = b.add_object("[" + c.morphism_name(idem[i]) + "]");

  // morphisms: triples (e, f, e') with f = e'∘f∘e
  struct QM {
    int e, f, e2;
  };
  std::vector<QM> qmor;
  std::map<std::pair<std::pair<int, int>, int>, int> qix;  // ((e,e2),f) -> index
  std::vector<int> qids(nq, -1);
  for (int i = 0; i < nq; ++i)
    for (int j = 0; j < nq; ++j) {
      int e = idem[i], e2 = idem[j];
      for (int f : c.hom(c.src(e), c.src(e2))) {
        if (c.compose(e2, c.compose(f, e)) != f) continue;
        int ix = static_cast<int>(qmor.size());
        qmor.push_back({e, f, e2});
        qix[{{i, j}, f}] = ix;
        if (i == j && f == e) qids[i] = ix;
      }
    }
  std::vector<int> mids(qmor.size());
  for (size_t k = 0; k < qmor.size(); ++k) {
    const auto& q = qmor[k];
    std::string nm = c.morphism_name(q.f) + ":[" + c.morphism_name(q.e) + "]->[" +
                     c.morphism_name(q.e2) + "]";
    int ei = static_cast<int>(std::find(idem.begin(), idem.end(), q.e) - idem.begin());
    int ej = static_cast<int>(std::find(idem.begin(), idem.end(), q.e2) - idem.begin());
    mids[k] = (static_cast<int>(k) == qids[ei] && ei == ej) ? b.add_identity(qobj[ei], nm)
                                                            : b.add_morphism(nm, qobj[ei], qobj[ej]);
  }
  for (size_t k1 = 0; k1 < qmor.size(); ++k1)
    for (size_t k2 = 0; k2 < qmor.size(); ++k2) {
      if (qmor[k1].e2 != qmor[k2].e) continue;
      int comp = c.compose(qmor[k2].f, qmor[k1].f);
      int i = static_cast<int>(std::find(idem.begin(), idem.end(), qmor[k1].e) - idem.begin());
      int j = static_cast<int>(std::find(idem.begin(), idem.end(), qmor[k2].e2) - idem.begin());
      b.set_compose(mids[k1], mids[k2], mids[qix.at({{i, j}, comp})]);
    }
  FinCategory q = b.validate();

  // Embedding c |-> id_c, f |-> f.
  std::vector<int> omap(c.num_objects()), mmap(c.num_morphisms());
  for (int o = 0; o < c.num_objects(); ++o) {
    int e = c.identity(o);
    omap[o] = static_cast<int>(std::find(idem.begin(), idem.end(), e) - idem.begin());
  }
  for (int m = 0; m < c.num_morphisms(); ++m) {
    int i = omap[c.src(m)], j = omap[c.tgt(m)];
    mmap[m] = mids[qix.at({{i, j}, m})];
  }
  FinFunctor emb(c, q, omap, mmap);
  return {std::move(q), std::move(emb), std::move(idem)};
}

// ---------------------------------------------------------------------------
// connected components

std::vector<int> connected_components(const FinCategory& c) {
  const int no = c.num_objects();
  std::vector<int> parent(no);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int>* pp = &parent;
  auto find = [&](int x) {
    while ((*pp)[x] != x) x = (*pp)[x] = (*pp)[(*pp)[x]];
    return x;
  };
  for (int m = 0; m < c.num_morphisms(); ++m) {
    int a = find(c.src(m)), b = find(c.tgt(m));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> comp(no, -1);
  int next = 0;
  for (int o = 0; o < no; ++o) {
    int r = find(o);
    if (comp[r] < 0) comp[r] = next++;
    comp[o] = comp[r];
  }
  return comp;
}

int num_components(const FinCategory& c) {
  auto comp = connected_components(c);
  return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

FinCategory full_subcategory(const FinCategory& c, const std::vector<int>& objects) {
  CategoryBuilder b;
  std::vector<int> new_obj(c.num_objects(), -1);
  for (int o : objects) new_obj[o] = b.add_object(c.object_name(o));
  std::vector<int> new_mor(c.num_morphisms(), -1);
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (new_obj[c.src(m)] < 0 || new_obj[c.tgt(m)] < 0) continue;
    new_mor[m] = c.is_identity(m)
                     ? b.add_identity(new_obj[c.src(m)], c.morphism_name(m))
                     : b.add_morphism(c.morphism_name(m), new_obj[c.src(m)], new_obj[c.tgt(m)]);
  }
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int g = 0; g < c.num_morphisms(); ++g) {
      if (new_mor[f] < 0 || new_mor[g] < 0 || c.tgt(f) != c.src(g)) continue;
      b.set_compose(new_mor[f], new_mor[g], new_mor[c.compose(g, f)]);
    }
  return b.validate();
}

// ---------------------------------------------------------------------------
// isomorphism / equivalence search

namespace {

bool iso_with_object_map(const FinCategory& a, const FinCategory& b, const std::vector<int>& om) {
  const int nm = a.num_morphisms();
  // hom sizes must match
  for (int x = 0; x < a.num_objects(); ++x)
    for (int y = 0; y < a.num_objects(); ++y)
      if (a.hom(x, y).size() != b.hom(om[x], om[y]).size()) return false;
  // Backtrack over a morphism bijection respecting endpoints, ids, composition.
  std::vector<int> mmap(nm, -1);
  std::vector<bool> used(b.num_morphisms(), false);
  for (int o = 0; o < a.num_objects(); ++o) {
    mmap[a.identity(o)] = b.identity(om[o]);
    used[b.identity(om[o])] = true;
  }
  std::vector<int> free_ms;
  for (int m = 0; m < nm; ++m)
    if (mmap[m] < 0) free_ms.push_back(m);

  // Partial consistency: every already-determined composite must map to the
  // composite of the images.
  auto consistent = [&](int m) {
    for (int x = 0; x < nm; ++x) {
      if (mmap[x] < 0) continue;
      if (a.tgt(x) == a.src(m)) {
        int comp = a.compose(m, x);
        if (mmap[comp] >= 0 && b.compose(mmap[m], mmap[x]) != mmap[comp]) return false;
      }
      if (a.tgt(m) == a.src(x)) {
        int comp = a.compose(x, m);
        if (mmap[comp] >= 0 && b.compose(mmap[x], mmap[m]) != mmap[comp]) return false;
      }
    }
    return true;
  };

  size_t k = 0;
  std::vector<size_t> ci(free_ms.size() + 1, 0);
  while (true) {
    if (k == free_ms.size()) {
      bool ok = true;
      for (int f = 0; f < nm && ok; ++f)
        for (int g = 0; g < nm && ok; ++g) {
          if (a.tgt(f) != a.src(g)) continue;
          ok = b.compose(mmap[g], mmap[f]) == mmap[a.compose(g, f)];
        }
      if (ok) return true;
      if (free_ms.empty()) return false;
      --k;
      used[mmap[free_ms[k]]] = false;
      mmap[free_ms[k]] = -1;
      ++ci[k];
      continue;
    }
    int m = free_ms[k];
    const auto& cand = b.hom(om[a.src(m)], om[a.tgt(m)]);
    bool advanced = false;
    while (ci[k] < cand.size()) {
      int x = cand[ci[k]];
      if (!used[x]) {
        mmap[m] = x;
        used[x] = true;
        if (consistent(m)) {
          ++k;
          ci[k] = 0;
          advanced = true;
          break;
        }
        used[x] = false;
        mmap[m] = -1;
      }
      ++ci[k];
    }
    if (advanced) continue;
    if (k == 0) return false;
    --k;
    used[mmap[free_ms[k]]] = false;
    mmap[free_ms[k]] = -1;
    ++ci[k];
  }
}

}  // namespace

bool categories_isomorphic(const FinCategory& a, const FinCategory& b) {
  if (a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms()) return false;
  std::vector<int> perm(a.num_objects());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (iso_with_object_map(a, b, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return a.num_objects() == 0;
}

namespace {

// Enumerate all functors a -> b via DFS over morphism images; stop at the
// first one passing `accept`.
bool search_functor(const FinCategory& a, const FinCategory& b, IterationGuard& guard,
                    const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& accept);

}  // namespace

bool categories_equivalent(const FinCategory& a, const FinCategory& b, long long iteration_cap) {
  if ((a.num_objects() == 0) != (b.num_objects() == 0)) return false;
  if (a.num_objects() == 0) return true;
  IterationGuard guard(iteration_cap);
  // Essential surjectivity needs an iso test in b; precompute iso classes of b's objects.
  auto iso_objects = [&](int x, int y) {
    for (int f : b.hom(x, y))
      for (int g : b.hom(y, x))
        if (b.compose(g, f) == b.identity(x) && b.compose(f, g) == b.identity(y)) return true;
    return false;
  };
  auto accept = [&](const std::vector<int>& om, const std::vector<int>& mm) {
    // fully faithful
    for (int x = 0; x < a.num_objects(); ++x)
      for (int y = 0; y < a.num_objects(); ++y) {
        const auto& ha = a.hom(x, y);
        std::vector<int> im;
        for (int m : ha) im.push_back(mm[m]);
        std::sort(im.begin(), im.end());
        if (std::adjacent_find(im.begin(), im.end()) != im.end()) return false;
        if (im.size() != b.hom(om[x], om[y]).size()) return false;
      }
    // essentially surjective
    for (int y = 0; y < b.num_objects(); ++y) {
      bool hit = false;
      for (int x = 0; x < a.num_objects() && !hit; ++x) hit = iso_objects(om[x], y);
      if (!hit) return false;
    }
    return true;
  };
  return search_functor(a, b, guard, accept);
}

namespace {

bool search_functor(const FinCategory& a, const FinCategory& b, IterationGuard& guard,
                    const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& accept) {
  const int no = a.num_objects(), nm = a.num_morphisms(), bo = b.num_objects();
  if (no == 0) return accept({}, {});
  std::vector<int> om(no, 0);
  while (true) {
    guard.tick();
    // enumerate morphism maps for this object map by DFS
    std::vector<int> mm(nm, -1);
    for (int o = 0; o < no; ++o) mm[a.identity(o)] = b.identity(om[o]);
    std::vector<int> free_ms;
    for (int m = 0; m < nm; ++m)
      if (mm[m] < 0) free_ms.push_back(m);
    std::vector<size_t> ci(free_ms.size() + 1, 0);
    size_t k = 0;
    bool done_obj = false;
    while (!done_obj) {
      if (k == free_ms.size()) {
        guard.tick();
        bool ok = true;
        for (int f = 0; f < nm && ok; ++f)
          for (int g = 0; g < nm && ok; ++g) {
            if (a.tgt(f) != a.src(g)) continue;
            ok = b.compose(mm[g], mm[f]) == mm[a.compose(g, f)];
          }
        if (ok && accept(om, mm)) return true;
        if (free_ms.empty()) break;
        --k;
        mm[free_ms[k]] = -1;
        ++ci[k];
        continue;
      }
      int m = free_ms[k];
      const auto& cand = b.hom(om[a.src(m)], om[a.tgt(m)]);
      bool advanced = false;
      while (ci[k] < cand.size()) {
        guard.tick();
        mm[m] = cand[ci[k]];
        // partial functoriality against already-assigned morphisms
        bool ok = true;
        for (int x = 0; x < nm && ok; ++x) {
          if (mm[x] < 0 || x == m) continue;
          if (a.tgt(x) == a.src(m) && mm[a.compose(m, x)] >= 0)
            ok = b.compose(mm[m], mm[x]) == mm[a.compose(m, x)];
          if (ok && a.tgt(m) == a.src(x) && mm[a.compose(x, m)] >= 0)
            ok = b.compose(mm[x], mm[m]) == mm[a.compose(x, m)];
        }
        if (ok && a.tgt(m) == a.src(m) && mm[a.compose(m, m)] >= 0)
          ok = b.compose(mm[m], mm[m]) == mm[a.compose(m, m)];
        if (ok) {
          ++k;
          ci[k] = 0;
          advanced = true;
          break;
        }
        mm[m] = -1;
        ++ci[k];
      }
      if (advanced) continue;
      mm[m] = -1;
      if (k == 0) break;
      --k;
      mm[free_ms[k]] = -1;
      ++ci[k];
    }
    // next object map
    int i = 0;
    while (i < no) {
      if (++om[i] < bo) break;
      om[i] = 0;
      ++i;
    }
    if (i == no) return false;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// standard categories

namespace cats {

FinCategory empty_category() { return CategoryBuilder{}.validate(); }

FinCategory terminal() {
  CategoryBuilder b;
  int o = b.add_object("*");
  b.add_identity(o, "id");
  return b.validate();
}

FinCategory discrete(int n) {
  CategoryBuilder b;
  for (int i = 0; i < n; ++i) {
    int o = b.add_object("c" + std::to_string(i));
    b.add_identity(o, "id" + std::to_string(i));
  }
  return b.validate();
}

FinCategory walking_arrow() {
  CategoryBuilder b;
  int a = b.add_object("a"), c = b.add_object("b");
  int ia = b.add_identity(a, "ida"), ib = b.add_identity(c, "idb");
  int u = b.add_morphism("u", a, c);
  b.set_compose(ia, u, u);
  b.set_compose(u, ib, u);
  return b.validate();
}

FinCategory parallel_pair() {
  CategoryBuilder b;
  int a = b.add_object("a"), c = b.add_object("b");
  int ia = b.add_identity(a, "ida"), ib = b.add_identity(c, "idb");
  int f = b.add_morphism("f", a, c), g = b.add_morphism("g", a, c);
  b.set_compose(ia, f, f);
  b.set_compose(ia, g, g);
  b.set_compose(f, ib, f);
  b.set_compose(g, ib, g);
  return b.validate();
}

FinCategory reflexive_pair() {
  // p, q : a -> b with common section s : b -> a (p∘s = q∘s = id_b).
  // Closure adds the idempotents sp, sq on a; composition works out to
  // e∘e' = e for e, e' in {sp, sq} read as "apply e' first".
  CategoryBuilder b;
  int a = b.add_object("a"), c = b.add_object("b");
  int ia = b.add_identity(a, "ida"), ib = b.add_identity(c, "idb");
  int p = b.add_morphism("p", a, c), q = b.add_morphism("q", a, c);
  int s = b.add_morphism("s", c, a);
  int sp = b.add_morphism("sp", a, a), sq = b.add_morphism("sq", a, a);
  auto cz = [&](int f, int g, int h) { b.set_compose(f, g, h); };
  // unit laws
  for (int m : {p, q, sp, sq}) {
    cz(ia, m, m);
  }
  cz(p, ib, p);
  cz(q, ib, q);
  cz(ib, s, s);
  cz(s, ia, s);
  cz(sp, ia, sp);
  cz(sq, ia, sq);
  // s then p/q = id_b
  cz(s, p, ib);
  cz(s, q, ib);
  // p/q then s = sp/sq
  cz(p, s, sp);
  cz(q, s, sq);
  // e' then e = e' ... careful: set_compose(first, then, equals)
  // sp∘sp = s(ps)p = sp ; sq after sp: first sp then sq: s q s p = s (qs) p = s p
  cz(sp, sp, sp);
  cz(sp, sq, sp);
  cz(sq, sp, sq);
  cz(sq, sq, sq);
  // first sp/sq then p/q : p s p = p ; q s p = p?? first sp (=s then p... sp: a->a), then p: a->b
  // p∘(sp) = p∘s∘p = (p∘s)∘p = p ; q∘(sp) = q∘s∘p = p ; p∘(sq) = p∘s∘q = q ; q∘(sq) = q
  cz(sp, p, p);
  cz(sp, q, p);
  cz(sq, p, q);
  cz(sq, q, q);
  // first s then sp/sq : sp∘s = s∘p∘s = s ; sq∘s = s
  cz(s, sp, s);
  cz(s, sq, s);
  return b.validate();
}

FinCategory walking_iso() {
  CategoryBuilder b;
  int a = b.add_object("a"), c = b.add_object("b");
  int ia = b.add_identity(a, "ida"), ib = b.add_identity(c, "idb");
  int f = b.add_morphism("f", a, c), g = b.add_morphism("g", c, a);
  b.set_compose(ia, f, f);
  b.set_compose(f, ib, f);
  b.set_compose(ib, g, g);
  b.set_compose(g, ia, g);
  b.set_compose(f, g, ia);
  b.set_compose(g, f, ib);
  return b.validate();
}

FinCategory span() {
  CategoryBuilder b;
  int a = b.add_object("a"), l = b.add_object("b"), r = b.add_object("c");
  int ia = b.add_identity(a, "ida"), il = b.add_identity(l, "idb"), ir = b.add_identity(r, "idc");
  int f = b.add_morphism("f", a, l), g = b.add_morphism("g", a, r);
  b.set_compose(ia, f, f);
  b.set_compose(f, il, f);
  b.set_compose(ia, g, g);
  b.set_compose(g, ir, g);
  return b.validate();
}

FinCategory cospan() { return opposite(span()); }

FinCategory chain(int n) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i + 1 < n; ++i) rel.emplace_back(i, i + 1);
  return poset_from_relation(n, rel);
}

FinCategory commutative_square() {
  return poset_from_relation(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

FinCategory walking_idempotent() {
  return monoid_from_table({{0, 1}, {1, 1}}, 0, "e");
}

FinCategory cyclic_group(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return monoid_from_table(t, 0, "g");
}

FinCategory left_zero_monoid() {
  // elements 0 = unit, 1 = a, 2 = b ; x·y = x for x,y in {a,b}
  return monoid_from_table({{0, 1, 2}, {1, 1, 1}, {2, 2, 2}}, 0, "z");
}

FinCategory monoid_from_table(const std::vector<std::vector<int>>& mult, int unit,
                              const std::string& prefix) {
  CategoryBuilder b;
  int o = b.add_object("*");
  const int n = static_cast<int>(mult.size());
  std::vector<int> ms(n);
  for (int i = 0; i < n; ++i)
    ms[i] = (i == unit) ? b.add_identity(o, prefix + std::to_string(i))
                        : b.add_morphism(prefix + std::to_string(i), o, o);
  // mult[i][j] = i·j; as composition: first j, then i.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b.set_compose(ms[j], ms[i], ms[mult[i][j]]);
  return b.validate();
}

FinCategory poset_from_relation(int n, const std::vector<std::pair<int, int>>& below) {
  // reflexive-transitive closure of the given relation; must be antisymmetric
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (auto [i, j] : below) le[i][j] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && le[i][j] && le[j][i])
        throw ValidationError("NotAPoset", "cycle through " + std::to_string(i));
  CategoryBuilder b;
  std::vector<int> obj(n);
  for (int i = 0; i < n; ++i) obj[i] = b.add_object("p" + std::to_string(i));
  std::vector<std::vector<int>> arrow(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!le[i][j]) continue;
      arrow[i][j] = (i == j) ? b.add_identity(obj[i], "id" + std::to_string(i))
                             : b.add_morphism("le" + std::to_string(i) + "_" + std::to_string(j),
                                              obj[i], obj[j]);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (le[i][j] && le[j][k]) b.set_compose(arrow[i][j], arrow[j][k], arrow[i][k]);
  return b.validate();
}

FinCategory disjoint_union(const FinCategory& a, const FinCategory& b) {
  CategoryBuilder bd;
  std::vector<int> ao(a.num_objects()), bo(b.num_objects());
  for (int i = 0; i < a.num_objects(); ++i) bd.add_object("L." + a.object_name(i));
  for (int i = 0; i < b.num_objects(); ++i) bd.add_object("R." + b.object_name(i));
  for (int i = 0; i < a.num_objects(); ++i) ao[i] = i;
  for (int i = 0; i < b.num_objects(); ++i) bo[i] = a.num_objects() + i;
  std::vector<int> am(a.num_morphisms()), bm(b.num_morphisms());
  for (int m = 0; m < a.num_morphisms(); ++m)
    am[m] = a.is_identity(m) ? bd.add_identity(ao[a.src(m)], "L." + a.morphism_name(m))
                             : bd.add_morphism("L." + a.morphism_name(m), ao[a.src(m)], ao[a.tgt(m)]);
  for (int m = 0; m < b.num_morphisms(); ++m)
    bm[m] = b.is_identity(m) ? bd.add_identity(bo[b.src(m)], "R." + b.morphism_name(m))
                             : bd.add_morphism("R." + b.morphism_name(m), bo[b.src(m)], bo[b.tgt(m)]);
  for (int f = 0; f < a.num_morphisms(); ++f)
    for (int g = 0; g < a.num_morphisms(); ++g)
      if (a.tgt(f) == a.src(g)) bd.set_compose(am[f], am[g], am[a.compose(g, f)]);
  for (int f = 0; f < b.num_morphisms(); ++f)
    for (int g = 0; g < b.num_morphisms(); ++g)
      if (b.tgt(f) == b.src(g)) bd.set_compose(bm[f], bm[g], bm[b.compose(g, f)]);
  return bd.validate();
}

}  // namespace cats

}  // namespace catlab
