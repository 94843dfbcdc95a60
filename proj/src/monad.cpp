#include "catlab/monad.hpp"

#include <memory>
#include <numeric>
#include <tuple>

namespace catlab {

MonadTable::MonadTable(std::string name, int window, std::vector<int> object_sizes, ArrowFn arrow,
                       std::vector<std::vector<int>> unit, std::vector<std::vector<int>> mult)
    : name_(std::move(name)),
      window_(window),
      object_(std::move(object_sizes)),
      arrow_(std::move(arrow)),
      unit_(std::move(unit)),
      mult_(std::move(mult)) {
  if (static_cast<int>(object_.size()) != window_ ||
      static_cast<int>(unit_.size()) != window_ || static_cast<int>(mult_.size()) != window_)
    throw ValidationError("WindowExceeded", "object/unit/mult tables must cover the window");
  for (int m = 0; m < window_; ++m) {
    if (static_cast<int>(unit_[m].size()) != m)
      throw ValidationError("BadMonadTable", "unit component at " + std::to_string(m));
    for (int v : unit_[m])
      if (v < 0 || v >= object_[m])
        throw ValidationError("BadMonadTable", "unit lands outside T at " + std::to_string(m));
    if (object_[m] < window_) {
      if (static_cast<int>(mult_[m].size()) != object_[object_[m]])
        throw ValidationError("BadMonadTable", "mult component at " + std::to_string(m));
      for (int v : mult_[m])
        if (v < 0 || v >= object_[m])
          throw ValidationError("BadMonadTable", "mult lands outside T at " + std::to_string(m));
    }
  }
}

void MonadTable::require_in_window(int m) const {
  if (m < 0 || m >= window_)
    throw ValidationError("WindowExceeded", std::to_string(m) + " outside the declared window");
}

int MonadTable::object(int m) const {
  require_in_window(m);
  return object_[m];
}

std::vector<int> MonadTable::arrow(int m, int m2, const std::vector<int>& u) const {
  require_in_window(m);
  require_in_window(m2);
  if (static_cast<int>(u.size()) != m)
    throw ValidationError("BadMonadTable", "arrow argument has the wrong length");
  std::vector<int> t = arrow_(m, m2, u);
  if (static_cast<int>(t.size()) != object_[m])
    throw ValidationError("BadMonadTable", "arrow action has the wrong length");
  return t;
}

const std::vector<int>& MonadTable::unit(int m) const {
  require_in_window(m);
  return unit_[m];
}

const std::vector<int>& MonadTable::mult(int m) const {
  require_in_window(m);
  if (object_[m] >= window_)
    throw ValidationError("WindowExceeded", "T(T(" + std::to_string(m) + ")) outside the window");
  return mult_[m];
}

bool MonadTable::check_laws(int max_m, std::string* failure) const {
  auto fail = [&](const std::string& why) {
    if (failure) *failure = why;
    return false;
  };
  auto all_functions = [](int dom, int cod) {
    std::vector<std::vector<int>> out;
    if (dom == 0) {
      out.push_back({});
      return out;
    }
    if (cod == 0) return out;
    std::vector<int> u(dom, 0);
    while (true) {
      out.push_back(u);
      int i = dom - 1;
      while (i >= 0) {
        if (++u[i] < cod) break;
        u[i] = 0;
        --i;
      }
      if (i < 0) break;
    }
    return out;
  };
  for (int m = 0; m <= max_m && m < window_; ++m) {
    std::vector<int> idm(m);
    std::iota(idm.begin(), idm.end(), 0);
    std::vector<int> tid = arrow(m, m, idm);
    for (int i = 0; i < object_[m]; ++i)
      if (tid[i] != i) return fail("T(id) != id at " + std::to_string(m));
  }
  for (int m = 0; m <= max_m && m < window_; ++m)
    for (int m2 = 0; m2 <= max_m && m2 < window_; ++m2)
      for (const auto& u : all_functions(m, m2)) {
        // unit naturality: T(u)∘η_m = η_m2∘u
        std::vector<int> tu = arrow(m, m2, u);
        for (int i = 0; i < m; ++i)
          if (tu[unit_[m][i]] != unit_[m2][u[i]])
            return fail("unit not natural at " + std::to_string(m) + "->" + std::to_string(m2));
        for (int m3 = 0; m3 <= max_m && m3 < window_; ++m3)
          for (const auto& v : all_functions(m2, m3)) {
            std::vector<int> vu(m);
            for (int i = 0; i < m; ++i) vu[i] = v[u[i]];
            std::vector<int> tvu = arrow(m, m3, vu);
            std::vector<int> tv = arrow(m2, m3, v);
            for (int i = 0; i < object_[m]; ++i)
              if (tvu[i] != tv[tu[i]]) return fail("T(v∘u) != T(v)T(u)");
          }
      }
  for (int m = 0; m <= max_m && m < window_; ++m) {
    if (object_[m] >= window_) continue;
    int tm = object_[m];
    // μ∘η_T = id and μ∘Tη = id on T(m)
    const std::vector<int>& mu = mult_[m];
    const std::vector<int>& eta_tm = unit_[tm];
    for (int i = 0; i < object_[m]; ++i)
      if (mu[eta_tm[i]] != i) return fail("μ∘η_T != id at " + std::to_string(m));
    std::vector<int> teta = arrow(m, tm, unit_[m]);
    for (int i = 0; i < object_[m]; ++i)
      if (mu[teta[i]] != i) return fail("μ∘Tη != id at " + std::to_string(m));
    // associativity: μ∘μ_T = μ∘Tμ on T(T(T(m))) when in window
    if (object_[tm] < window_) {
      int ttm = object_[tm];
      const std::vector<int>& mu_tm = mult_[tm];
      std::vector<int> tmu = arrow(ttm, tm, mult_[m]);
      for (int i = 0; i < object_[ttm]; ++i)
        if (mu[mu_tm[i]] != mu[tmu[i]]) return fail("μ not associative at " + std::to_string(m));
    }
  }
  return true;
}

MonadTable MonadTable::identity_monad(int window) {
  std::vector<int> obj(window);
  std::iota(obj.begin(), obj.end(), 0);
  std::vector<std::vector<int>> unit(window), mult(window);
  for (int m = 0; m < window; ++m) {
    unit[m].resize(m);
    std::iota(unit[m].begin(), unit[m].end(), 0);
    mult[m].resize(m);
    std::iota(mult[m].begin(), mult[m].end(), 0);
  }
  return MonadTable("identity", window, std::move(obj),
                    [](int, int, const std::vector<int>& u) { return u; }, std::move(unit),
                    std::move(mult));
}

MonadTable MonadTable::maybe_monad(int window) {
  // T(A) = A + {*}; T(u) maps the point to the point
  std::vector<int> obj(window);
  for (int m = 0; m < window; ++m) obj[m] = m + 1;
  std::vector<std::vector<int>> unit(window), mult(window);
  for (int m = 0; m < window; ++m) {
    unit[m].resize(m);
    std::iota(unit[m].begin(), unit[m].end(), 0);
    if (m + 1 < window) {
      mult[m].resize(m + 2);  // T(T(m)) = m + 2
      for (int i = 0; i < m; ++i) mult[m][i] = i;
      mult[m][m] = m;      // inner point
      mult[m][m + 1] = m;  // outer point
    }
  }
  return MonadTable("maybe", window, std::move(obj),
                    [](int m, int m2, const std::vector<int>& u) {
                      std::vector<int> t(m + 1);
                      for (int i = 0; i < m; ++i) t[i] = u[i];
                      t[m] = m2;  // the added point
                      return t;
                    },
                    std::move(unit), std::move(mult));
}

MonadTable MonadTable::from_tables(
    std::string name, int window, std::vector<int> object_sizes,
    std::map<std::tuple<int, int, std::vector<int>>, std::vector<int>> arrows,
    std::vector<std::vector<int>> unit, std::vector<std::vector<int>> mult) {
  auto table = std::make_shared<std::map<std::tuple<int, int, std::vector<int>>, std::vector<int>>>(
      std::move(arrows));
  return MonadTable(std::move(name), window, std::move(object_sizes),
                    [table](int m, int m2, const std::vector<int>& u) {
                      auto it = table->find({m, m2, u});
                      if (it == table->end())
                        throw ValidationError("WindowExceeded",
                                              "arrow action not present in the table");
                      return it->second;
                    },
                    std::move(unit), std::move(mult));
}

AlgebraCount monad_algebra_count(const MonadTable& t, int n, const Config& cfg) {
  if (n >= t.window() || t.object(n) >= t.window())
    throw ValidationError("WindowExceeded",
                          "algebra check needs n and T(n) inside the window");
  AlgebraCount out;
  int tn = t.object(n);
  long long space = checked_pow(n, tn, cfg.iteration_cap);
  if (n == 0) {
    // a: T(0) -> 0 exists only if T(0) = 0; then the laws are vacuous
    if (tn == 0) {
      out.count = 1;
      out.algebras.push_back({});
    }
    return out;
  }
  (void)space;
  const std::vector<int>& eta = t.unit(n);
  const std::vector<int>& mu = t.mult(n);
  std::vector<int> a(tn, 0);
  while (true) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = a[eta[i]] == i;
    if (ok) {
      std::vector<int> ta = t.arrow(tn, n, a);  // T(a): T(T(n)) -> T(n)
      int ttn = t.object(tn);
      for (int j = 0; j < ttn && ok; ++j) ok = a[ta[j]] == a[mu[j]];
    }
    if (ok) {
      ++out.count;
      out.algebras.push_back(a);
    }
    int i = tn - 1;
    while (i >= 0) {
      if (++a[i] < n) break;
      a[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace catlab
