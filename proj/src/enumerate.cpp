#include "catlab/enumerate.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace catlab {

namespace {

// Backtracking enumeration of all composition tables over a fixed hom-size
// matrix. Morphisms are laid out block by block, identities first in their
// block; unit-law entries are pre-filled and the rest is searched with
// incremental associativity checks. Full validation at the leaves catches
// the triples the incremental filter cannot see yet.
struct TableSearch {
  int no;
  std::vector<int> src, tgt, identity;
  std::vector<int> table;  // table[f*nm+g] = g∘f
  int nm;
  std::vector<std::pair<int, int>> slots;  // composable non-forced pairs (f,g)
  IterationGuard* guard;
  std::function<void(const FinCategory&)> emit;

  bool assoc_ok_around(int f0, int g0) {
    for (int h = 0; h < nm; ++h) {
      // triple (f0, g0, h): h∘(g0∘f0) vs (h∘g0)∘f0
      if (tgt[g0] == src[h]) {
        int gf = table[f0 * nm + g0];
        int hg = table[g0 * nm + h];
        if (gf >= 0 && hg >= 0) {
          int a = table[f0 * nm + hg];
          int b = table[gf * nm + h];
          if (a >= 0 && b >= 0 && a != b) return false;
        }
      }
      // triple (h, f0, g0): g0∘(f0∘h) vs (g0∘f0)∘h
      if (tgt[h] == src[f0]) {
        int fh = table[h * nm + f0];
        int gf = table[f0 * nm + g0];
        if (fh >= 0 && gf >= 0) {
          int a = table[h * nm + gf];
          int b = table[fh * nm + g0];
          if (a >= 0 && b >= 0 && a != b) return false;
        }
      }
    }
    return true;
  }

  void run(size_t k) {
    guard->tick();
    if (k == slots.size()) {
      build();
      return;
    }
    auto [f, g] = slots[k];
    for (int h = 0; h < nm; ++h) {
      if (src[h] != src[f] || tgt[h] != tgt[g]) continue;
      table[f * nm + g] = h;
      if (assoc_ok_around(f, g)) run(k + 1);
    }
    table[f * nm + g] = -1;
  }

  void build() {
    RawCategory raw;
    for (int o = 0; o < no; ++o) raw.objects.push_back("c" + std::to_string(o));
    for (int m = 0; m < nm; ++m)
      raw.morphisms.push_back({"m" + std::to_string(m), raw.objects[src[m]], raw.objects[tgt[m]]});
    for (int o = 0; o < no; ++o)
      raw.identities.emplace_back(raw.objects[o], raw.morphisms[identity[o]].name);
    for (int f = 0; f < nm; ++f)
      for (int g = 0; g < nm; ++g)
        if (table[f * nm + g] >= 0)
          raw.compose.push_back({raw.morphisms[f].name, raw.morphisms[g].name,
                                 raw.morphisms[table[f * nm + g]].name});
    try {
      emit(FinCategory::validate(raw));
    } catch (const ValidationError&) {
    }
  }
};

}  // namespace

std::vector<FinCategory> enumerate_categories(int max_objects, int max_morphisms,
                                              IterationGuard& guard) {
  std::vector<FinCategory> out;
  std::set<std::string> seen;
  auto consider = [&](const FinCategory& c) {
    std::string key = c.canonical_key();
    if (seen.insert(key).second) out.push_back(c);
  };
  consider(cats::empty_category());
  for (int no = 1; no <= max_objects; ++no) {
    if (no > max_morphisms) break;
    std::vector<int> h(static_cast<size_t>(no) * no, 0);
    for (int a = 0; a < no; ++a) h[a * no + a] = 1;
    auto search_tables = [&]() {
      TableSearch ts;
      ts.no = no;
      ts.guard = &guard;
      ts.identity.assign(no, -1);
      for (int a = 0; a < no; ++a)
        for (int b = 0; b < no; ++b)
          for (int i = 0; i < h[a * no + b]; ++i) {
            if (a == b && i == 0) ts.identity[a] = static_cast<int>(ts.src.size());
            ts.src.push_back(a);
            ts.tgt.push_back(b);
          }
      ts.nm = static_cast<int>(ts.src.size());
      ts.table.assign(static_cast<size_t>(ts.nm) * ts.nm, -1);
      for (int f = 0; f < ts.nm; ++f)
        for (int g = 0; g < ts.nm; ++g) {
          if (ts.tgt[f] != ts.src[g]) continue;
          if (ts.identity[ts.src[g]] == g)
            ts.table[f * ts.nm + g] = f;
          else if (ts.identity[ts.tgt[f]] == f)
            ts.table[f * ts.nm + g] = g;
          else
            ts.slots.emplace_back(f, g);
        }
      ts.emit = consider;
      ts.run(0);
    };
    // fill the hom matrix cell by cell, pruning on the remaining budget;
    // `sum` starts at the pre-counted diagonal minima (one identity each)
    std::function<void(int, int)> fill = [&](int cell, int sum) {
      if (sum > max_morphisms) return;
      if (cell == no * no) {
        search_tables();
        return;
      }
      int lo = (cell / no == cell % no) ? 1 : 0;
      for (int v = lo; sum + (v - lo) <= max_morphisms; ++v) {
        h[cell] = v;
        fill(cell + 1, sum + (v - lo));
      }
      h[cell] = lo;
    };
    fill(0, no);
  }
  return out;
}

void enumerate_functors(const FinCategory& dom, const FinCategory& cod, IterationGuard& guard,
                        const std::function<bool(const FinFunctor&)>& visit) {
  const int no = dom.num_objects(), nm = dom.num_morphisms(), bo = cod.num_objects();
  if (no == 0) {
    visit(FinFunctor(dom, cod, {}, {}));
    return;
  }
  if (bo == 0) return;
  std::vector<int> om(no, 0);
  while (true) {
    guard.tick();
    std::vector<int> mm(nm, -1);
    for (int o = 0; o < no; ++o) mm[dom.identity(o)] = cod.identity(om[o]);
    std::vector<int> free_ms;
    for (int m = 0; m < nm; ++m)
      if (mm[m] < 0) free_ms.push_back(m);

    std::function<bool(size_t)> rec = [&](size_t k) -> bool {
      guard.tick();
      if (k == free_ms.size()) {
        for (int f = 0; f < nm; ++f)
          for (int g = 0; g < nm; ++g) {
            if (dom.tgt(f) != dom.src(g)) continue;
            if (cod.compose(mm[g], mm[f]) != mm[dom.compose(g, f)]) return true;  // not a functor
          }
        return visit(FinFunctor(dom, cod, om, mm));
      }
      int m = free_ms[k];
      for (int x : cod.hom(om[dom.src(m)], om[dom.tgt(m)])) {
        mm[m] = x;
        bool ok = true;
        for (int y = 0; y < nm && ok; ++y) {
          if (mm[y] < 0) continue;
          if (dom.tgt(y) == dom.src(m) && mm[dom.compose(m, y)] >= 0)
            ok = cod.compose(mm[m], mm[y]) == mm[dom.compose(m, y)];
          if (ok && dom.tgt(m) == dom.src(y) && mm[dom.compose(y, m)] >= 0)
            ok = cod.compose(mm[y], mm[m]) == mm[dom.compose(y, m)];
        }
        if (ok && !rec(k + 1)) return false;
        mm[m] = -1;
      }
      return true;
    };
    if (!rec(0)) return;

    int i = no - 1;
    while (i >= 0) {
      if (++om[i] < bo) break;
      om[i] = 0;
      --i;
    }
    if (i < 0) return;
  }
}

void enumerate_set_functors(std::shared_ptr<const FinCategory> base, Variance variance,
                            int value_bound, IterationGuard& guard,
                            const std::function<bool(const SetFunctor&)>& visit) {
  const FinCategory& c = *base;
  const int no = c.num_objects(), nm = c.num_morphisms();
  std::vector<int> carriers(no, 0);
  auto vsrc = [&](int m) { return variance == Variance::Covariant ? c.src(m) : c.tgt(m); };
  auto vtgt = [&](int m) { return variance == Variance::Covariant ? c.tgt(m) : c.src(m); };

  // constraint triples (f, g, g∘f) indexed by participating morphism
  std::vector<std::vector<std::array<int, 3>>> triples_cache(nm);
  for (int f = 0; f < nm; ++f)
    for (int g = 0; g < nm; ++g) {
      if (c.tgt(f) != c.src(g)) continue;
      int gf = c.compose(g, f);
      std::array<int, 3> t{f, g, gf};
      triples_cache[f].push_back(t);
      if (g != f) triples_cache[g].push_back(t);
      if (gf != f && gf != g) triples_cache[gf].push_back(t);
    }

  while (true) {
    guard.tick();
    std::vector<std::vector<int>> actions(nm);
    std::vector<bool> assigned(nm, false);
    for (int o = 0; o < no; ++o) {
      auto& a = actions[c.identity(o)];
      a.resize(carriers[o]);
      std::iota(a.begin(), a.end(), 0);
      assigned[c.identity(o)] = true;
    }
    std::vector<int> free_ms;
    for (int m = 0; m < nm; ++m)
      if (!assigned[m]) free_ms.push_back(m);

    auto consistent_at = [&](int m) {
      for (const auto& t : triples_cache[m]) {
        auto [f, g, gf] = t;
        if (!assigned[f] || !assigned[g] || !assigned[gf]) continue;
        int first = variance == Variance::Covariant ? f : g;
        int second = variance == Variance::Covariant ? g : f;
        const auto& af = actions[first];
        const auto& as = actions[second];
        const auto& agf = actions[gf];
        for (int x = 0; x < carriers[vsrc(first)]; ++x)
          if (agf[x] != as[af[x]]) return false;
      }
      return true;
    };

    std::function<bool(size_t)> rec = [&](size_t k) -> bool {
      guard.tick();
      if (k == free_ms.size()) return visit(SetFunctor(base, variance, carriers, actions));
      int m = free_ms[k];
      int dom_size = carriers[vsrc(m)], cod_size = carriers[vtgt(m)];
      if (dom_size > 0 && cod_size == 0) return true;  // no table exists
      std::vector<int> table(dom_size, 0);
      assigned[m] = true;
      while (true) {
        actions[m] = table;
        if (consistent_at(m) && !rec(k + 1)) {
          assigned[m] = false;
          return false;
        }
        int i = dom_size - 1;
        while (i >= 0) {
          if (++table[i] < cod_size) break;
          table[i] = 0;
          --i;
        }
        if (i < 0) break;
      }
      assigned[m] = false;
      actions[m].clear();
      return true;
    };
    if (!rec(0)) return;
    if (no == 0) return;

    int i = no - 1;
    while (i >= 0) {
      if (++carriers[i] <= value_bound) break;
      carriers[i] = 0;
      --i;
    }
    if (i < 0) return;
  }
}

std::optional<SetFunctor> random_set_functor(std::shared_ptr<const FinCategory> base,
                                             Variance variance, int max_carrier, Rng& rng,
                                             int retries) {
  const FinCategory& c = *base;
  const int no = c.num_objects(), nm = c.num_morphisms();
  auto vsrc = [&](int m) { return variance == Variance::Covariant ? c.src(m) : c.tgt(m); };
  auto vtgt = [&](int m) { return variance == Variance::Covariant ? c.tgt(m) : c.src(m); };
  for (int attempt = 0; attempt < retries; ++attempt) {
    std::vector<int> carriers(no);
    for (int& v : carriers) v = rng.below(max_carrier + 1);
    std::vector<std::vector<int>> actions(nm);
    bool possible = true;
    for (int m = 0; m < nm && possible; ++m) {
      int ds = carriers[vsrc(m)], cs = carriers[vtgt(m)];
      if (c.is_identity(m)) {
        actions[m].resize(ds);
        std::iota(actions[m].begin(), actions[m].end(), 0);
        continue;
      }
      if (ds > 0 && cs == 0) {
        possible = false;
        break;
      }
      actions[m].resize(ds);
      for (int& v : actions[m]) v = cs == 0 ? 0 : rng.below(cs);
    }
    if (!possible) continue;
    try {
      return SetFunctor(base, variance, std::move(carriers), std::move(actions));
    } catch (const ValidationError&) {
      continue;
    }
  }
  return std::nullopt;
}

std::optional<FinFunctor> random_functor(const FinCategory& dom, const FinCategory& cod, Rng& rng,
                                         int retries) {
  const int no = dom.num_objects(), nm = dom.num_morphisms();
  if (cod.num_objects() == 0 && no > 0) return std::nullopt;
  for (int attempt = 0; attempt < retries; ++attempt) {
    std::vector<int> om(no);
    for (int& v : om) v = rng.below(cod.num_objects());
    std::vector<int> mm(nm, -1);
    bool possible = true;
    for (int m = 0; m < nm && possible; ++m) {
      if (dom.is_identity(m)) {
        mm[m] = cod.identity(om[dom.src(m)]);
        continue;
      }
      const auto& cand = cod.hom(om[dom.src(m)], om[dom.tgt(m)]);
      if (cand.empty()) {
        possible = false;
        break;
      }
      mm[m] = cand[rng.below(static_cast<int>(cand.size()))];
    }
    if (!possible) continue;
    try {
      return FinFunctor(dom, cod, std::move(om), std::move(mm));
    } catch (const ValidationError&) {
      continue;
    }
  }
  return std::nullopt;
}

}  // namespace catlab
