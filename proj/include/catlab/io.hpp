// File formats (categories, weights/diagrams, theories, structures, monad
// windows) and JSON serialization of verdicts and witnesses. One document
// per file; validation errors cite the offending entry by name.
#ifndef CATLAB_IO_HPP_
#define CATLAB_IO_HPP_

#include <memory>
#include <string>

#include <json.hpp>

#include "catlab/doctrine.hpp"
#include "catlab/equational.hpp"
#include "catlab/fincat.hpp"
#include "catlab/monad.hpp"
#include "catlab/setfunctor.hpp"

namespace catlab {

using OrderedJson = nlohmann::ordered_json;

FinCategory category_from_json(const nlohmann::json& j);
// Weight files reference their category file; relative paths resolve
// against the weight file's directory.
SetFunctor weight_from_json(const nlohmann::json& j, const std::string& base_dir);
Theory theory_from_json(const nlohmann::json& j);
Structure structure_from_json(const nlohmann::json& j, const Language& l);
MonadTable monad_from_json(const nlohmann::json& j);

FinCategory load_category(const std::string& path);
SetFunctor load_weight(const std::string& path);
Theory load_theory(const std::string& path);
Structure load_structure(const std::string& path, const Language& l);
MonadTable load_monad(const std::string& path);

OrderedJson category_to_json(const FinCategory& c);
OrderedJson set_functor_to_json(const SetFunctor& f);
OrderedJson witness_to_json(const CommutationWitness& w);
CommutationWitness witness_from_json(const nlohmann::json& j);
OrderedJson verdict_to_json(const Verdict& v);

std::string file_digest(const std::string& path);  // fnv1a of the bytes, hex

}  // namespace catlab

#endif  // CATLAB_IO_HPP_
