// The bundled test corpus: curated category families plus seeded random
// members, and weight corpora over them. The recipe is versioned so runs
// are reproducible.
#ifndef CATLAB_CORPUS_HPP_
#define CATLAB_CORPUS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "catlab/fincat.hpp"
#include "catlab/setfunctor.hpp"

namespace catlab {

inline constexpr const char* kCorpusVersion = "corpus-v1";
inline constexpr std::uint64_t kCorpusSeed = 0xC0FFEE0012345678ULL;

struct NamedCategory {
  std::string name;
  FinCategory cat;
};

struct NamedWeight {
  std::string name;
  SetFunctor weight;
};

// Curated families (posets, small monoids, groupoids, unions, products)
// plus rejection-sampled random posets and monoids, all validated, with at
// most max_objects objects. The <=3-object slice is curated so every
// non-sifted member has a refuting bifunctor within value bound 3 (groups
// of order >= 5 would not; they are left out).
std::vector<NamedCategory> category_corpus(int max_objects);

// Weights over every corpus category with at most max_objects objects:
// Δ1, the empty weight, all representables, and seeded random presheaves.
std::vector<NamedWeight> weight_corpus(int max_objects, int max_carrier, int random_per_category,
                                       std::uint64_t seed = kCorpusSeed);

}  // namespace catlab

#endif  // CATLAB_CORPUS_HPP_
