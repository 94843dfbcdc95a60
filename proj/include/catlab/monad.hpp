// Finite windows of monads on Set and enumeration of their algebras.
#ifndef CATLAB_MONAD_HPP_
#define CATLAB_MONAD_HPP_

#include <functional>
#include <map>
#include <tuple>
#include <string>
#include <vector>

#include "catlab/core.hpp"

namespace catlab {

// A monad known on the finite sets {0..window-1}: object sizes T(m), the
// action on functions, unit and multiplication components. Out-of-window
// queries raise WindowExceeded. Laws are exhaustively checkable on a
// sub-window via check_laws.
class MonadTable {
 public:
  using ArrowFn = std::function<std::vector<int>(int m, int m2, const std::vector<int>& u)>;

  MonadTable(std::string name, int window, std::vector<int> object_sizes, ArrowFn arrow,
             std::vector<std::vector<int>> unit, std::vector<std::vector<int>> mult);

  const std::string& name() const { return name_; }
  int window() const { return window_; }
  int object(int m) const;                         // T(m)
  std::vector<int> arrow(int m, int m2, const std::vector<int>& u) const;  // T(u)
  const std::vector<int>& unit(int m) const;       // η_m : m -> T(m)
  const std::vector<int>& mult(int m) const;       // μ_m : T(T(m)) -> T(m)

  // functor identity/composition, unit naturality, and the monad unit and
  // associativity laws, checked for every function between sets <= max_m
  bool check_laws(int max_m, std::string* failure = nullptr) const;

  static MonadTable identity_monad(int window);
  static MonadTable maybe_monad(int window);
  // explicit arrow tables, as read from a file
  static MonadTable from_tables(std::string name, int window, std::vector<int> object_sizes,
                                std::map<std::tuple<int, int, std::vector<int>>, std::vector<int>> arrows,
                                std::vector<std::vector<int>> unit,
                                std::vector<std::vector<int>> mult);

 private:
  void require_in_window(int m) const;
  std::string name_;
  int window_;
  std::vector<int> object_;
  ArrowFn arrow_;
  std::vector<std::vector<int>> unit_, mult_;
};

// Eilenberg-Moore algebras a: T(n) -> n satisfying the unit and
// associativity laws, enumerated exhaustively in lexicographic order.
struct AlgebraCount {
  long long count = 0;
  std::vector<std::vector<int>> algebras;
};
AlgebraCount monad_algebra_count(const MonadTable& t, int n,
                                 const Config& cfg = Config::desk());

}  // namespace catlab

#endif  // CATLAB_MONAD_HPP_
