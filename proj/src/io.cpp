#include "catlab/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace catlab {

namespace {

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("FileNotFound", path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("MalformedFile", path + ": " + e.what());
  }
  return j;
}

}  // namespace

FinCategory category_from_json(const nlohmann::json& j) {
  RawCategory raw;
  if (!j.contains("objects") || !j.contains("morphisms") || !j.contains("identities"))
    throw ValidationError("MalformedFile", "category file needs objects, morphisms, identities");
  for (const auto& o : j.at("objects")) raw.objects.push_back(o.get<std::string>());
  for (const auto& m : j.at("morphisms"))
    raw.morphisms.push_back({m.at("name").get<std::string>(), m.at("src").get<std::string>(),
                             m.at("tgt").get<std::string>()});
  for (const auto& [obj, mor] : j.at("identities").items())
    raw.identities.emplace_back(obj, mor.get<std::string>());
  if (j.contains("compose"))
    for (const auto& e : j.at("compose"))
      raw.compose.push_back({e.at("first").get<std::string>(), e.at("then").get<std::string>(),
                             e.at("equals").get<std::string>()});
  return FinCategory::validate(raw);
}

SetFunctor weight_from_json(const nlohmann::json& j, const std::string& base_dir) {
  FinCategory cat;
  if (j.contains("category")) {
    std::filesystem::path p = j.at("category").get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    cat = load_category(p.string());
  } else if (j.contains("category_inline")) {
    cat = category_from_json(j.at("category_inline"));
  } else {
    throw ValidationError("MalformedFile", "weight file needs a category reference");
  }
  std::string var = j.value("variance", "contravariant");
  if (var != "covariant" && var != "contravariant")
    throw ValidationError("MalformedFile", "variance must be covariant or contravariant");
  Variance variance = var == "covariant" ? Variance::Covariant : Variance::Contravariant;

  std::vector<int> carriers(cat.num_objects(), 0);
  for (const auto& [name, size] : j.at("carriers").items()) {
    int o = -1;
    for (int i = 0; i < cat.num_objects(); ++i)
      if (cat.object_name(i) == name) o = i;
    if (o < 0) throw ValidationError("MalformedFile", "carrier for unknown object " + name);
    carriers[o] = size.get<int>();
  }
  auto base = std::make_shared<const FinCategory>(std::move(cat));
  const FinCategory& c = *base;
  std::vector<std::vector<int>> actions(c.num_morphisms());
  std::vector<bool> given(c.num_morphisms(), false);
  if (j.contains("actions"))
    for (const auto& [name, table] : j.at("actions").items()) {
      int m = -1;
      for (int i = 0; i < c.num_morphisms(); ++i)
        if (c.morphism_name(i) == name) m = i;
      if (m < 0) throw ValidationError("MalformedFile", "action for unknown morphism " + name);
      actions[m] = table.get<std::vector<int>>();
      given[m] = true;
    }
  for (int m = 0; m < c.num_morphisms(); ++m) {
    if (given[m]) continue;
    if (!c.is_identity(m))
      throw ValidationError("MalformedFile", "missing action for morphism " + c.morphism_name(m));
    int o = c.src(m);
    actions[m].resize(carriers[o]);
    for (int x = 0; x < carriers[o]; ++x) actions[m][x] = x;
  }
  return SetFunctor(base, variance, std::move(carriers), std::move(actions));
}

Theory theory_from_json(const nlohmann::json& j) {
  std::vector<FunctionSymbol> symbols;
  for (const auto& s : j.at("symbols"))
    symbols.push_back({s.at("name").get<std::string>(), s.at("in").get<int>(),
                       s.at("out").get<int>()});
  Language l(std::move(symbols));
  std::vector<Equation> eqs;
  if (j.contains("equations"))
    for (const auto& e : j.at("equations"))
      eqs.push_back({parse_term(e.at("lhs").get<std::string>()),
                     parse_term(e.at("rhs").get<std::string>())});
  return Theory(std::move(l), std::move(eqs));
}

Structure structure_from_json(const nlohmann::json& j, const Language& l) {
  Structure a;
  a.carrier = j.at("carrier").get<int>();
  a.tables.resize(l.symbols().size());
  for (const auto& [name, table] : j.at("tables").items()) {
    int ix = l.index_of(name);
    if (ix < 0) throw ValidationError("MalformedFile", "table for unknown symbol " + name);
    a.tables[ix] = table.get<std::vector<long long>>();
  }
  if (!validate_structure(l, a))
    throw ValidationError("MalformedFile", "structure tables do not match the language arities");
  return a;
}

MonadTable monad_from_json(const nlohmann::json& j) {
  int window = j.at("window").get<int>();
  std::vector<int> objects = j.at("objects").get<std::vector<int>>();
  std::vector<std::vector<int>> unit = j.at("unit").get<std::vector<std::vector<int>>>();
  std::vector<std::vector<int>> mult = j.at("mult").get<std::vector<std::vector<int>>>();
  std::map<std::tuple<int, int, std::vector<int>>, std::vector<int>> arrows;
  for (const auto& a : j.at("arrows"))
    arrows[{a.at("from").get<int>(), a.at("to").get<int>(),
            a.at("map").get<std::vector<int>>()}] = a.at("action").get<std::vector<int>>();
  return MonadTable::from_tables(j.value("name", "monad"), window, std::move(objects),
                                 std::move(arrows), std::move(unit), std::move(mult));
}

FinCategory load_category(const std::string& path) {
  return category_from_json(read_json_file(path));
}

SetFunctor load_weight(const std::string& path) {
  std::filesystem::path p(path);
  return weight_from_json(read_json_file(path), p.parent_path().string());
}

Theory load_theory(const std::string& path) { return theory_from_json(read_json_file(path)); }

Structure load_structure(const std::string& path, const Language& l) {
  return structure_from_json(read_json_file(path), l);
}

MonadTable load_monad(const std::string& path) { return monad_from_json(read_json_file(path)); }

OrderedJson category_to_json(const FinCategory& c) {
  OrderedJson j;
  j["objects"] = OrderedJson::array();
  for (int o = 0; o < c.num_objects(); ++o) j["objects"].push_back(c.object_name(o));
  j["morphisms"] = OrderedJson::array();
  for (int m = 0; m < c.num_morphisms(); ++m)
    j["morphisms"].push_back({{"name", c.morphism_name(m)},
                              {"src", c.object_name(c.src(m))},
                              {"tgt", c.object_name(c.tgt(m))}});
  OrderedJson ids = OrderedJson::object();
  for (int o = 0; o < c.num_objects(); ++o)
    ids[c.object_name(o)] = c.morphism_name(c.identity(o));
  j["identities"] = std::move(ids);
  j["compose"] = OrderedJson::array();
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int g = 0; g < c.num_morphisms(); ++g)
      if (c.tgt(f) == c.src(g))
        j["compose"].push_back({{"first", c.morphism_name(f)},
                                {"then", c.morphism_name(g)},
                                {"equals", c.morphism_name(c.compose(g, f))}});
  return j;
}

OrderedJson set_functor_to_json(const SetFunctor& f) {
  OrderedJson j;
  j["variance"] = f.variance() == Variance::Covariant ? "covariant" : "contravariant";
  OrderedJson carriers = OrderedJson::object();
  for (int o = 0; o < f.base().num_objects(); ++o)
    carriers[f.base().object_name(o)] = f.carrier(o);
  j["carriers"] = std::move(carriers);
  OrderedJson actions = OrderedJson::object();
  for (int m = 0; m < f.base().num_morphisms(); ++m)
    actions[f.base().morphism_name(m)] = f.action(m);
  j["actions"] = std::move(actions);
  return j;
}

OrderedJson witness_to_json(const CommutationWitness& w) {
  OrderedJson j;
  j["shape"] = category_to_json(w.shape);
  j["index"] = category_to_json(w.index);
  j["carriers"] = w.carriers;
  j["actions"] = w.actions;
  if (w.weight) {
    j["weight"] = set_functor_to_json(*w.weight);
    j["weight_base"] = category_to_json(w.weight->base());
  }
  j["lhs_size"] = w.lhs_size;
  j["rhs_size"] = w.rhs_size;
  return j;
}

CommutationWitness witness_from_json(const nlohmann::json& j) {
  CommutationWitness w;
  w.shape = category_from_json(j.at("shape"));
  w.index = category_from_json(j.at("index"));
  w.carriers = j.at("carriers").get<std::vector<int>>();
  w.actions = j.at("actions").get<std::vector<std::vector<int>>>();
  if (j.contains("weight")) {
    nlohmann::json wj = j.at("weight");
    wj["category_inline"] = j.at("weight_base");
    w.weight = weight_from_json(wj, ".");
  }
  w.lhs_size = j.at("lhs_size").get<int>();
  w.rhs_size = j.at("rhs_size").get<int>();
  return w;
}

OrderedJson verdict_to_json(const Verdict& v) {
  OrderedJson j;
  j["state"] = v.state_name();
  if (v.state == Verdict::State::Decided) j["value"] = v.value;
  j["certificate"] = v.certificate;
  if (v.state == Verdict::State::ConsistentUpTo) {
    j["shape_bound"] = v.shape_bound;
    j["value_bound"] = v.value_bound;
  }
  if (v.witness) j["witness"] = witness_to_json(*v.witness);
  return j;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("FileNotFound", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return hex64(fnv1a(ss.str()));
}

}  // namespace catlab
