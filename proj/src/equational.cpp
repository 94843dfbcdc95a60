#include "catlab/equational.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <tuple>
#include <numeric>
#include <sstream>

namespace catlab {

Language::Language(std::vector<FunctionSymbol> symbols) : symbols_(std::move(symbols)) {
  for (size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].in_arity < 0 || symbols_[i].out_arity < 0)
      throw ValidationError("BadArity", symbols_[i].name);
    for (size_t j = i + 1; j < symbols_.size(); ++j)
      if (symbols_[i].name == symbols_[j].name)
        throw ValidationError("DuplicateSymbol", symbols_[i].name);
  }
}

int Language::index_of(const std::string& name) const {
  for (size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return static_cast<int>(i);
  return -1;
}

TermPtr Term::base_map(std::vector<int> images, int in_size) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::BaseMap;
  t->map_images = std::move(images);
  t->map_in = in_size;
  for (int v : t->map_images)
    if (v < 0 || v >= in_size) throw ValidationError("BadBaseMap", "image out of range");
  return t;
}

TermPtr Term::identity_map(int size) {
  std::vector<int> img(size);
  std::iota(img.begin(), img.end(), 0);
  return base_map(std::move(img), size);
}

TermPtr Term::sym(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Symbol;
  t->symbol = std::move(name);
  return t;
}

TermPtr Term::pow(TermPtr sub, int z) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Power;
  t->sub = std::move(sub);
  t->power = z;
  if (z < 0) throw ValidationError("BadArity", "negative power");
  return t;
}

TermPtr Term::comp(TermPtr s, std::vector<TermPtr> ts) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Compose;
  t->sub = std::move(s);
  t->args = std::move(ts);
  return t;
}

std::string Term::show() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::BaseMap: {
      os << "(map [";
      for (size_t i = 0; i < map_images.size(); ++i) os << (i ? "," : "") << map_images[i];
      os << "] from " << map_images.size() << " to " << map_in << ")";
      break;
    }
    case Kind::Symbol: os << "(sym " << symbol << ")"; break;
    case Kind::Power: os << "(pow " << sub->show() << " " << power << ")"; break;
    case Kind::Compose: {
      os << "(comp " << sub->show() << " [";
      for (size_t i = 0; i < args.size(); ++i) os << (i ? " " : "") << args[i]->show();
      os << "])";
      break;
    }
  }
  return os.str();
}

Arity arity_of_term(const Language& l, const Term& t) {
  switch (t.kind) {
    case Term::Kind::BaseMap:
      return {t.map_in, static_cast<int>(t.map_images.size())};
    case Term::Kind::Symbol: {
      int ix = l.index_of(t.symbol);
      if (ix < 0) throw ValidationError("UnknownSymbol", t.symbol);
      return {l.symbols()[ix].in_arity, l.symbols()[ix].out_arity};
    }
    case Term::Kind::Power: {
      Arity a = arity_of_term(l, *t.sub);
      return {t.power * a.in, t.power * a.out};
    }
    case Term::Kind::Compose: {
      Arity s = arity_of_term(l, *t.sub);
      int sum_in = 0, sum_out = 0;
      for (const auto& arg : t.args) {
        Arity a = arity_of_term(l, *arg);
        sum_in += a.in;
        sum_out += a.out;
      }
      if (s.in != sum_out)
        throw ValidationError("ArityMismatch",
                              "composition head expects " + std::to_string(s.in) +
                                  " inputs, arguments produce " + std::to_string(sum_out));
      return {sum_in, s.out};
    }
  }
  throw ValidationError("ArityMismatch", "unreachable");
}

Theory::Theory(Language l, std::vector<Equation> eqs)
    : language(std::move(l)), equations(std::move(eqs)) {
  for (const auto& e : equations) {
    Arity a = arity_of_term(language, *e.lhs);
    Arity b = arity_of_term(language, *e.rhs);
    if (!(a == b))
      throw ValidationError("ArityMismatch", "equation sides have different arities");
  }
}

long long encode_tuple(const std::vector<int>& tuple, int carrier) {
  long long code = 0;
  for (int v : tuple) code = code * carrier + v;
  return code;
}

std::vector<int> decode_tuple(long long code, int carrier, int length) {
  std::vector<int> out(length, 0);
  for (int i = length - 1; i >= 0; --i) {
    out[i] = carrier == 0 ? 0 : static_cast<int>(code % carrier);
    code = carrier == 0 ? 0 : code / carrier;
  }
  return out;
}

bool validate_structure(const Language& l, const Structure& a) {
  if (a.carrier < 0) return false;
  if (a.tables.size() != l.symbols().size()) return false;
  for (size_t i = 0; i < l.symbols().size(); ++i) {
    long long in_space = checked_pow(a.carrier, l.symbols()[i].in_arity, 1LL << 40);
    long long out_space = checked_pow(a.carrier, l.symbols()[i].out_arity, 1LL << 40);
    if (static_cast<long long>(a.tables[i].size()) != in_space) return false;
    for (long long v : a.tables[i])
      if (v < 0 || v >= out_space) return false;
  }
  return true;
}

std::vector<long long> interpret_term(const Language& l, const Term& t, const Structure& a) {
  Arity ar = arity_of_term(l, t);
  const int n = a.carrier;
  long long in_space = checked_pow(n, ar.in, 1LL << 40);
  std::vector<long long> table(static_cast<size_t>(in_space));
  switch (t.kind) {
    case Term::Kind::BaseMap: {
      // precomposition: (x: X -> A) |-> x∘g
      for (long long code = 0; code < in_space; ++code) {
        std::vector<int> x = decode_tuple(code, n, ar.in);
        std::vector<int> y(ar.out);
        for (int i = 0; i < ar.out; ++i) y[i] = x[t.map_images[i]];
        table[code] = encode_tuple(y, n);
      }
      return table;
    }
    case Term::Kind::Symbol:
      return a.tables[l.index_of(t.symbol)];
    case Term::Kind::Power: {
      Arity sub = arity_of_term(l, *t.sub);
      std::vector<long long> tsub = interpret_term(l, *t.sub, a);
      for (long long code = 0; code < in_space; ++code) {
        std::vector<int> x = decode_tuple(code, n, ar.in);
        std::vector<int> y(ar.out);
        for (int z = 0; z < t.power; ++z) {
          std::vector<int> slice(x.begin() + z * sub.in, x.begin() + (z + 1) * sub.in);
          std::vector<int> out =
              decode_tuple(tsub[encode_tuple(slice, n)], n, sub.out);
          std::copy(out.begin(), out.end(), y.begin() + z * sub.out);
        }
        table[code] = encode_tuple(y, n);
      }
      return table;
    }
    case Term::Kind::Compose: {
      Arity head = arity_of_term(l, *t.sub);
      std::vector<long long> thead = interpret_term(l, *t.sub, a);
      std::vector<std::vector<long long>> targs;
      std::vector<Arity> arities;
      for (const auto& arg : t.args) {
        targs.push_back(interpret_term(l, *arg, a));
        arities.push_back(arity_of_term(l, *arg));
      }
      for (long long code = 0; code < in_space; ++code) {
        std::vector<int> x = decode_tuple(code, n, ar.in);
        std::vector<int> mid(head.in);
        int in_off = 0, out_off = 0;
        for (size_t j = 0; j < t.args.size(); ++j) {
          std::vector<int> slice(x.begin() + in_off, x.begin() + in_off + arities[j].in);
          std::vector<int> out =
              decode_tuple(targs[j][encode_tuple(slice, n)], n, arities[j].out);
          std::copy(out.begin(), out.end(), mid.begin() + out_off);
          in_off += arities[j].in;
          out_off += arities[j].out;
        }
        table[code] = thead[encode_tuple(mid, n)];
      }
      return table;
    }
  }
  throw std::logic_error("unreachable term kind");
}

SatisfactionResult satisfies(const Theory& e, const Structure& a) {
  for (size_t i = 0; i < e.equations.size(); ++i) {
    std::vector<long long> lhs = interpret_term(e.language, *e.equations[i].lhs, a);
    std::vector<long long> rhs = interpret_term(e.language, *e.equations[i].rhs, a);
    for (size_t p = 0; p < lhs.size(); ++p)
      if (lhs[p] != rhs[p])
        return {false, static_cast<int>(i), static_cast<long long>(p)};
  }
  return {};
}

long long structure_space_size(const Language& l, int n) {
  long long total = 1;
  for (const auto& s : l.symbols()) {
    long long in_space = checked_pow(n, s.in_arity, 1LL << 40);
    long long out_space = checked_pow(n, s.out_arity, 1LL << 40);
    total *= checked_pow(out_space, static_cast<int>(in_space), 1LL << 40);
    if (total > (1LL << 40)) throw BudgetError("structure space too large");
  }
  return total;
}

std::vector<Structure> enumerate_models(const Theory& e, int n, const Config& cfg) {
  const Language& l = e.language;
  long long space = structure_space_size(l, n);
  if (space > cfg.iteration_cap) throw BudgetError("model table space exceeds the budget");
  std::vector<Structure> out;
  Structure a;
  a.carrier = n;
  a.tables.resize(l.symbols().size());
  std::vector<long long> in_space(l.symbols().size()), out_space(l.symbols().size());
  for (size_t i = 0; i < l.symbols().size(); ++i) {
    in_space[i] = checked_pow(n, l.symbols()[i].in_arity, 1LL << 40);
    out_space[i] = checked_pow(n, l.symbols()[i].out_arity, 1LL << 40);
    a.tables[i].assign(static_cast<size_t>(in_space[i]), 0);
    if (out_space[i] == 0 && in_space[i] > 0) return {};  // no structures at all
  }
  while (true) {
    if (satisfies(e, a).ok) out.push_back(a);
    // advance the multi-table odometer, last entry fastest
    int sym = static_cast<int>(l.symbols().size()) - 1;
    bool advanced = false;
    while (sym >= 0 && !advanced) {
      auto& tab = a.tables[sym];
      int i = static_cast<int>(tab.size()) - 1;
      while (i >= 0) {
        if (++tab[i] < out_space[sym]) {
          advanced = true;
          break;
        }
        tab[i] = 0;
        --i;
      }
      if (!advanced) --sym;
    }
    if (!advanced) break;
  }
  return out;
}

std::vector<std::vector<int>> enumerate_morphisms(const Language& l, const Structure& a,
                                                  const Structure& b) {
  std::vector<std::vector<int>> out;
  if (a.carrier == 0) {
    out.push_back({});
    return out;
  }
  if (b.carrier == 0) return out;
  std::vector<int> h(a.carrier, 0);
  while (true) {
    bool ok = true;
    for (size_t sy = 0; sy < l.symbols().size() && ok; ++sy) {
      const auto& s = l.symbols()[sy];
      long long in_space = checked_pow(a.carrier, s.in_arity, 1LL << 40);
      for (long long code = 0; code < in_space && ok; ++code) {
        std::vector<int> x = decode_tuple(code, a.carrier, s.in_arity);
        std::vector<int> hx(s.in_arity);
        for (int i = 0; i < s.in_arity; ++i) hx[i] = h[x[i]];
        std::vector<int> fa = decode_tuple(a.tables[sy][code], a.carrier, s.out_arity);
        std::vector<int> fb =
            decode_tuple(b.tables[sy][encode_tuple(hx, b.carrier)], b.carrier, s.out_arity);
        for (int i = 0; i < s.out_arity && ok; ++i) ok = h[fa[i]] == fb[i];
      }
    }
    if (ok) out.push_back(h);
    int i = a.carrier - 1;
    while (i >= 0) {
      if (++h[i] < b.carrier) break;
      h[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

ModelCoequalizer reflexive_coequalizer_of_models(const Theory& e, const Structure& a,
                                                 const Structure& b, const std::vector<int>& d0,
                                                 const std::vector<int>& d1,
                                                 const std::vector<int>& s,
                                                 const std::vector<Structure>& candidate_targets) {
  const Language& l = e.language;
  auto is_morphism = [&](const Structure& x, const Structure& y, const std::vector<int>& h) {
    auto all = enumerate_morphisms(l, x, y);
    return std::find(all.begin(), all.end(), h) != all.end();
  };
  if (!is_morphism(a, b, d0) || !is_morphism(a, b, d1) || !is_morphism(b, a, s))
    throw ValidationError("NotReflexive", "d0, d1 or s is not a structure morphism");
  for (int x = 0; x < b.carrier; ++x)
    if (d0[s[x]] != x || d1[s[x]] != x)
      throw ValidationError("NotReflexive", "s is not a common section of d0 and d1");

  // finite-set coequalizer of the carriers
  std::vector<int> parent(b.carrier);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int x = 0; x < a.carrier; ++x) {
    int p = find(d0[x]), q = find(d1[x]);
    if (p != q) parent[std::max(p, q)] = std::min(p, q);
  }
  ModelCoequalizer out;
  out.projection.assign(b.carrier, -1);
  int next = 0;
  for (int x = 0; x < b.carrier; ++x) {
    int r = find(x);
    if (out.projection[r] < 0) out.projection[r] = next++;
    out.projection[x] = out.projection[r];
  }
  out.quotient.carrier = next;

  // descend the tables: pick representatives, check independence of choice
  std::vector<int> rep(next, -1);
  for (int x = b.carrier - 1; x >= 0; --x) rep[out.projection[x]] = x;
  out.quotient.tables.resize(l.symbols().size());
  for (size_t sy = 0; sy < l.symbols().size(); ++sy) {
    const auto& sym = l.symbols()[sy];
    long long qin = checked_pow(next, sym.in_arity, 1LL << 40);
    out.quotient.tables[sy].assign(static_cast<size_t>(qin), 0);
    for (long long code = 0; code < qin; ++code) {
      std::vector<int> qx = decode_tuple(code, next, sym.in_arity);
      std::vector<int> bx(sym.in_arity);
      for (int i = 0; i < sym.in_arity; ++i) bx[i] = rep[qx[i]];
      std::vector<int> by =
          decode_tuple(b.tables[sy][encode_tuple(bx, b.carrier)], b.carrier, sym.out_arity);
      std::vector<int> qy(sym.out_arity);
      for (int i = 0; i < sym.out_arity; ++i) qy[i] = out.projection[by[i]];
      out.quotient.tables[sy][code] = encode_tuple(qy, next);
    }
    // well-definedness: all lifts of the same class tuple agree
    long long bin = checked_pow(b.carrier, sym.in_arity, 1LL << 40);
    for (long long code = 0; code < bin; ++code) {
      std::vector<int> bx = decode_tuple(code, b.carrier, sym.in_arity);
      std::vector<int> qx(sym.in_arity);
      for (int i = 0; i < sym.in_arity; ++i) qx[i] = out.projection[bx[i]];
      std::vector<int> by = decode_tuple(b.tables[sy][code], b.carrier, sym.out_arity);
      std::vector<int> qy(sym.out_arity);
      for (int i = 0; i < sym.out_arity; ++i) qy[i] = out.projection[by[i]];
      if (out.quotient.tables[sy][encode_tuple(qx, next)] != encode_tuple(qy, next))
        throw ValidationError("DescentFailure", "table of " + sym.name +
                                                    " does not descend to the quotient");
    }
  }
  out.is_model = satisfies(e, out.quotient).ok;

  // universal property among the candidate targets
  for (const Structure& t : candidate_targets) {
    for (const auto& g : enumerate_morphisms(l, b, t)) {
      bool coeq = true;
      for (int x = 0; x < a.carrier && coeq; ++x) coeq = g[d0[x]] == g[d1[x]];
      if (!coeq) continue;
      int count = 0;
      for (const auto& u : enumerate_morphisms(l, out.quotient, t)) {
        bool match = true;
        for (int x = 0; x < b.carrier && match; ++x) match = u[out.projection[x]] == g[x];
        if (match) ++count;
      }
      if (count != 1) out.universal = false;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// free structures by congruence closure

namespace {

struct EGraph {
  // nodes: generators (symbol -1) and applications (symbol, input classes, coord)
  struct Node {
    int symbol = -1;
    std::vector<int> inputs;
    int coord = 0;
  };
  std::vector<Node> nodes;
  std::vector<int> node_class;  // node -> class id (class ids = union-find over nodes)
  std::vector<int> parent;      // union-find over nodes
  std::map<std::tuple<int, std::vector<int>, int>, int> hash;

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool merge(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent[std::max(x, y)] = std::min(x, y);
    return true;
  }
  int add_node(int symbol, std::vector<int> inputs, int coord) {
    auto key = std::make_tuple(symbol, inputs, coord);
    auto it = hash.find(key);
    if (it != hash.end()) return find(it->second);
    int id = static_cast<int>(nodes.size());
    nodes.push_back({symbol, std::move(inputs), coord});
    parent.push_back(id);
    hash.emplace(std::move(key), id);
    return id;
  }
  // canonicalize all nodes; merge nodes whose canonical keys collide
  bool rebuild() {
    bool changed = false;
    bool again = true;
    while (again) {
      again = false;
      std::map<std::tuple<int, std::vector<int>, int>, int> fresh;
      for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        std::vector<int> canon(nodes[i].inputs.size());
        for (size_t j = 0; j < canon.size(); ++j) canon[j] = find(nodes[i].inputs[j]);
        auto key = std::make_tuple(nodes[i].symbol, std::move(canon), nodes[i].coord);
        auto it = fresh.find(key);
        if (it == fresh.end()) {
          fresh.emplace(std::move(key), i);
        } else if (merge(it->second, i)) {
          changed = true;
          again = true;
        }
      }
      hash = std::move(fresh);
    }
    return changed;
  }
  std::vector<int> classes() {
    std::vector<int> reps;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
      if (find(i) == i) reps.push_back(i);
    return reps;
  }
};

// evaluate a term on a tuple of classes, creating application nodes on demand
std::vector<int> eval_term(EGraph& g, const Language& l, const Term& t,
                           const std::vector<int>& input) {
  switch (t.kind) {
    case Term::Kind::BaseMap: {
      std::vector<int> out(t.map_images.size());
      for (size_t i = 0; i < out.size(); ++i) out[i] = input[t.map_images[i]];
      return out;
    }
    case Term::Kind::Symbol: {
      int ix = l.index_of(t.symbol);
      const auto& s = l.symbols()[ix];
      std::vector<int> canon(input.size());
      for (size_t i = 0; i < input.size(); ++i) canon[i] = g.find(input[i]);
      std::vector<int> out(s.out_arity);
      for (int y = 0; y < s.out_arity; ++y) out[y] = g.add_node(ix, canon, y);
      return out;
    }
    case Term::Kind::Power: {
      Arity sub = arity_of_term(l, *t.sub);
      std::vector<int> out;
      out.reserve(static_cast<size_t>(t.power) * sub.out);
      for (int z = 0; z < t.power; ++z) {
        std::vector<int> slice(input.begin() + z * sub.in, input.begin() + (z + 1) * sub.in);
        std::vector<int> o = eval_term(g, l, *t.sub, slice);
        out.insert(out.end(), o.begin(), o.end());
      }
      return out;
    }
    case Term::Kind::Compose: {
      std::vector<int> mid;
      int off = 0;
      for (const auto& arg : t.args) {
        Arity a = arity_of_term(l, *arg);
        std::vector<int> slice(input.begin() + off, input.begin() + off + a.in);
        std::vector<int> o = eval_term(g, l, *arg, slice);
        mid.insert(mid.end(), o.begin(), o.end());
        off += a.in;
      }
      return eval_term(g, l, *t.sub, mid);
    }
  }
  throw std::logic_error("unreachable term kind");
}

}  // namespace

FreeStructureResult free_structure_bounded(const Theory& e, int generators, int class_budget,
                                           const Config& cfg) {
  const Language& l = e.language;
  IterationGuard guard(cfg.iteration_cap);
  EGraph g;
  FreeStructureResult out;
  for (int i = 0; i < generators; ++i) g.add_node(-1, {}, i);

  while (true) {
    guard.tick();
    std::vector<int> reps = g.classes();
    out.growth.push_back(static_cast<int>(reps.size()));
    if (static_cast<int>(reps.size()) > class_budget) {
      out.stabilized = false;
      return out;
    }
    bool changed = false;
    // 1. saturate under all symbol applications on existing classes
    for (size_t sy = 0; sy < l.symbols().size(); ++sy) {
      const auto& sym = l.symbols()[sy];
      long long count = checked_pow(static_cast<long long>(reps.size()), sym.in_arity,
                                    cfg.iteration_cap);
      for (long long code = 0; code < count; ++code) {
        guard.tick();
        std::vector<int> pick =
            decode_tuple(code, static_cast<int>(reps.size()), sym.in_arity);
        std::vector<int> tup(sym.in_arity);
        for (int i = 0; i < sym.in_arity; ++i) tup[i] = g.find(reps[pick[i]]);
        size_t before = g.nodes.size();
        for (int y = 0; y < sym.out_arity; ++y) g.add_node(static_cast<int>(sy), tup, y);
        if (g.nodes.size() != before) changed = true;
      }
    }
    // 2. instantiate equations
    std::vector<int> reps2 = g.classes();
    for (const auto& eq : e.equations) {
      Arity ar = arity_of_term(l, *eq.lhs);
      long long count = checked_pow(static_cast<long long>(reps2.size()), ar.in,
                                    cfg.iteration_cap);
      for (long long code = 0; code < count; ++code) {
        guard.tick();
        std::vector<int> pick = decode_tuple(code, static_cast<int>(reps2.size()), ar.in);
        std::vector<int> tup(ar.in);
        for (int i = 0; i < ar.in; ++i) tup[i] = g.find(reps2[pick[i]]);
        std::vector<int> lhs = eval_term(g, l, *eq.lhs, tup);
        std::vector<int> rhs = eval_term(g, l, *eq.rhs, tup);
        for (int i = 0; i < ar.out; ++i)
          if (g.merge(lhs[i], rhs[i])) changed = true;
      }
    }
    // 3. congruence rebuild
    if (g.rebuild()) changed = true;
    if (!changed) break;
  }

  // stable: number the classes by least node id and read off the tables
  std::vector<int> reps = g.classes();
  if (static_cast<int>(reps.size()) > class_budget) {
    out.stabilized = false;
    return out;
  }
  std::map<int, int> class_no;
  for (size_t i = 0; i < reps.size(); ++i) class_no[reps[i]] = static_cast<int>(i);
  int n = static_cast<int>(reps.size());
  out.structure.carrier = n;
  out.structure.tables.resize(l.symbols().size());
  for (size_t sy = 0; sy < l.symbols().size(); ++sy) {
    const auto& sym = l.symbols()[sy];
    long long in_space = checked_pow(n, sym.in_arity, 1LL << 40);
    out.structure.tables[sy].assign(static_cast<size_t>(in_space), 0);
    for (long long code = 0; code < in_space; ++code) {
      std::vector<int> pick = decode_tuple(code, n, sym.in_arity);
      std::vector<int> tup(sym.in_arity);
      for (int i = 0; i < sym.in_arity; ++i) tup[i] = g.find(reps[pick[i]]);
      std::vector<int> y(sym.out_arity);
      for (int yy = 0; yy < sym.out_arity; ++yy)
        y[yy] = class_no.at(g.find(g.add_node(static_cast<int>(sy), tup, yy)));
      out.structure.tables[sy][code] = encode_tuple(y, n);
    }
  }
  out.generator_class.resize(generators);
  for (int i = 0; i < generators; ++i) out.generator_class[i] = class_no.at(g.find(i));
  out.stabilized = true;
  return out;
}

// ---------------------------------------------------------------------------
// orthogonality

bool orthogonality_check(const Language& l, const Structure& a, const Structure& p,
                         const Structure& w, const std::vector<int>& h) {
  auto hom_w = enumerate_morphisms(l, w, a);
  auto hom_p = enumerate_morphisms(l, p, a);
  // precompose: g |-> g∘h
  std::vector<std::vector<int>> image;
  for (const auto& g : hom_w) {
    std::vector<int> gh(p.carrier);
    for (int x = 0; x < p.carrier; ++x) gh[x] = g[h[x]];
    image.push_back(gh);
  }
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
  std::sort(hom_p.begin(), hom_p.end());
  return image == hom_p;
}

bool orthogonality_check_free_source(const Language& l, const Structure& a, const Structure& w,
                                     const std::vector<int>& generator_images) {
  auto hom_w = enumerate_morphisms(l, w, a);
  // evaluation at the generator images must biject onto A^k
  std::vector<std::vector<int>> image;
  for (const auto& g : hom_w) {
    std::vector<int> v(generator_images.size());
    for (size_t i = 0; i < generator_images.size(); ++i) v[i] = g[generator_images[i]];
    image.push_back(v);
  }
  std::sort(image.begin(), image.end());
  if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
  long long expect = checked_pow(a.carrier, static_cast<int>(generator_images.size()), 1LL << 40);
  return static_cast<long long>(image.size()) == expect;
}

// ---------------------------------------------------------------------------
// term parser: (sym NAME) | (map [i,..] from OUT to IN) | (pow T Z) |
// (comp T [T ..])

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && (std::isspace(static_cast<unsigned char>(s[pos])) || s[pos] == ','))
      ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw ValidationError("TermSyntax", "expected '" + std::string(1, c) + "' at offset " +
                                              std::to_string(pos));
  }
  std::string word() {
    skip();
    size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != '(' && s[pos] != ')' && s[pos] != '[' && s[pos] != ']' && s[pos] != ',')
      ++pos;
    if (start == pos) throw ValidationError("TermSyntax", "expected a token at offset " +
                                                              std::to_string(pos));
    return s.substr(start, pos - start);
  }
  int number() {
    std::string w = word();
    try {
      return std::stoi(w);
    } catch (...) {
      throw ValidationError("TermSyntax", "expected a number, got '" + w + "'");
    }
  }

  TermPtr term() {
    expect('(');
    std::string head = word();
    TermPtr out;
    if (head == "sym") {
      out = Term::sym(word());
    } else if (head == "map") {
      expect('[');
      std::vector<int> images;
      while (true) {
        skip();
        if (pos < s.size() && s[pos] == ']') break;
        images.push_back(number());
      }
      expect(']');
      std::string kw = word();
      if (kw != "from") throw ValidationError("TermSyntax", "expected 'from'");
      int out_size = number();
      if (out_size != static_cast<int>(images.size()))
        throw ValidationError("TermSyntax", "map image count differs from the declared out-arity");
      kw = word();
      if (kw != "to") throw ValidationError("TermSyntax", "expected 'to'");
      int in_size = number();
      out = Term::base_map(std::move(images), in_size);
    } else if (head == "pow") {
      TermPtr sub = term();
      int z = number();
      out = Term::pow(std::move(sub), z);
    } else if (head == "comp") {
      TermPtr headterm = term();
      expect('[');
      std::vector<TermPtr> args;
      while (true) {
        skip();
        if (pos < s.size() && s[pos] == ']') break;
        args.push_back(term());
      }
      expect(']');
      out = Term::comp(std::move(headterm), std::move(args));
    } else {
      throw ValidationError("TermSyntax", "unknown term head '" + head + "'");
    }
    expect(')');
    return out;
  }
};

}  // namespace

TermPtr parse_term(const std::string& text) {
  Parser p{text};
  TermPtr t = p.term();
  p.skip();
  if (p.pos != text.size())
    throw ValidationError("TermSyntax", "trailing input after the term");
  return t;
}

}  // namespace catlab
