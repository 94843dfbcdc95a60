// Bounded exhaustive enumeration: finite categories up to isomorphism by
// backtracking over composition tables, functors between finite categories,
// and set-valued functors in canonical order.
#ifndef CATLAB_ENUMERATE_HPP_
#define CATLAB_ENUMERATE_HPP_

#include <functional>
#include <vector>

#include "catlab/core.hpp"
#include "catlab/fincat.hpp"
#include "catlab/setfunctor.hpp"

namespace catlab {

// All categories with at most max_objects objects and max_morphisms
// morphisms (identities included), up to isomorphism. Exhaustive; intended
// for small bounds (it is cross-checked against the doctrine shortcuts at
// max_objects <= 2). Trips the guard on larger bounds rather than lying.
std::vector<FinCategory> enumerate_categories(int max_objects, int max_morphisms,
                                              IterationGuard& guard);

// Visits every functor dom -> cod; stop early by returning false.
void enumerate_functors(const FinCategory& dom, const FinCategory& cod, IterationGuard& guard,
                        const std::function<bool(const FinFunctor&)>& visit);

// Visits every set-valued functor on `base` with carriers <= value_bound in
// canonical order: carrier size vectors lexicographically, then action
// tables lexicographically. The first witness reported by any search over
// this enumeration is therefore deterministic.
void enumerate_set_functors(std::shared_ptr<const FinCategory> base, Variance variance,
                            int value_bound, IterationGuard& guard,
                            const std::function<bool(const SetFunctor&)>& visit);

// Random set functor with carriers <= max_carrier, via rejection sampling.
// Returns nullopt when no sample validates within the retry budget.
std::optional<SetFunctor> random_set_functor(std::shared_ptr<const FinCategory> base,
                                             Variance variance, int max_carrier, Rng& rng,
                                             int retries = 64);

// Random functor shape -> c by the same rejection scheme.
std::optional<FinFunctor> random_functor(const FinCategory& dom, const FinCategory& cod, Rng& rng,
                                         int retries = 64);

}  // namespace catlab

#endif  // CATLAB_ENUMERATE_HPP_
