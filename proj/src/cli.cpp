#include "catlab/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "catlab/cocompletion.hpp"
#include "catlab/corpus.hpp"
#include "catlab/doctrine.hpp"
#include "catlab/io.hpp"
#include "catlab/monad.hpp"
#include "catlab/verify.hpp"

namespace catlab {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInput = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitUsage = 64;

struct Common {
  int bound = 3;
  int value_bound = 2;
  int depth = 2;
  std::string shape_class = "all-finite";
  long long budget = 10'000'000;
  std::string recheck;
  std::string profile = "desk";
};

Config make_config(const Common& c) {
  Config cfg;
  cfg.iteration_cap = c.budget;
  cfg.value_bound = c.value_bound;
  cfg.shape_bound = c.bound;
  return cfg;
}

// explicit:<file,file,...> or a keyword
ShapeClass parse_class(const std::string& keyword, int bound) {
  if (keyword.rfind("explicit:", 0) == 0) {
    std::vector<FinCategory> shapes;
    std::string rest = keyword.substr(9);
    std::stringstream ss(rest);
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) shapes.push_back(load_category(part));
    return ShapeClass::explicit_shapes_class(std::move(shapes));
  }
  return ShapeClass::parse(keyword, bound);
}

class ReportBuilder {
 public:
  ReportBuilder(const std::string& command, const std::vector<std::string>& args,
                const Common& common) {
    j_["command"] = command;
    j_["argv"] = args;
    j_["inputs"] = OrderedJson::object();
    j_["bounds"] = {{"bound", common.bound},
                    {"value_bound", common.value_bound},
                    {"depth", common.depth},
                    {"budget", common.budget}};
    start_ = std::chrono::steady_clock::now();
  }
  void add_input(const std::string& path) { j_["inputs"][path] = file_digest(path); }
  OrderedJson& json() { return j_; }
  int finish(std::ostream& out, std::ostream& err, int exit_code, const std::string& summary) {
    j_["exit"] = exit_code;
    j_["wall_clock_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start_)
                              .count();
    out << j_.dump(2) << "\n";
    err << summary << "\n";
    return exit_code;
  }

 private:
  OrderedJson j_;
  std::chrono::steady_clock::time_point start_;
};

int verdict_exit(const Verdict& v) {
  switch (v.state) {
    case Verdict::State::Decided: return v.value ? kExitOk : kExitRefuted;
    case Verdict::State::Refuted: return kExitRefuted;
    case Verdict::State::ConsistentUpTo: return kExitInconclusive;
  }
  return kExitInconclusive;
}

int finish_verdict(ReportBuilder& rb, std::ostream& out, std::ostream& err, const Verdict& v,
                   const std::string& what) {
  rb.json()["verdict"] = verdict_to_json(v);
  return rb.finish(out, err, verdict_exit(v), what + ": " + v.state_name() + " (" +
                                                  v.certificate + ")");
}

// when --recheck is given, re-validate the witness stored in that report
int handle_recheck(const std::string& path, ReportBuilder& rb, std::ostream& out,
                   std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw ValidationError("FileNotFound", path);
  nlohmann::json j;
  in >> j;
  if (!j.contains("verdict") || !j.at("verdict").contains("witness"))
    throw ValidationError("MalformedFile", "report carries no witness to recheck");
  CommutationWitness w = witness_from_json(j.at("verdict").at("witness"));
  bool ok = recheck_witness(w);
  rb.json()["recheck"] = ok;
  return rb.finish(out, err, ok ? kExitOk : kExitRefuted,
                   ok ? "witness re-validates" : "witness does NOT re-validate");
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite-category laboratory"};
  app.require_subcommand(1);
  Common common;

  std::string file_a, file_b, file_c;
  int size = 2;
  int generators = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--bound", common.bound, "shape-class size bound");
    sub->add_option("--value-bound", common.value_bound, "carrier bound for searches");
    sub->add_option("--depth", common.depth, "closure depth");
    sub->add_option("--class", common.shape_class,
                    "shape class keyword or explicit:<file,...>");
    sub->add_option("--budget", common.budget, "iteration budget");
    sub->add_option("--recheck", common.recheck, "re-validate the witness in this report file");
    sub->add_option("--profile", common.profile, "desk or deep");
    return sub;
  };

  CLI::App* validate = add_common(app.add_subcommand("validate", "validate a category file"));
  validate->add_option("file", file_a)->required();
  CLI::App* limit_cmd = add_common(app.add_subcommand("limit", "limit of a covariant diagram"));
  limit_cmd->add_option("file", file_a)->required();
  CLI::App* colimit_cmd =
      add_common(app.add_subcommand("colimit", "colimit of a covariant diagram"));
  colimit_cmd->add_option("file", file_a)->required();
  CLI::App* wcolim = add_common(app.add_subcommand("wcolim", "weighted colimit M * H"));
  wcolim->add_option("weight", file_a)->required();
  wcolim->add_option("diagram", file_b)->required();
  CLI::App* elements =
      add_common(app.add_subcommand("elements", "category of elements of a weight"));
  elements->add_option("weight", file_a)->required();
  CLI::App* check_filtered =
      add_common(app.add_subcommand("check-filtered", "structural filteredness"));
  check_filtered->add_option("file", file_a)->required();
  CLI::App* check_sifted = add_common(app.add_subcommand("check-sifted", "structural siftedness"));
  check_sifted->add_option("file", file_a)->required();
  CLI::App* check_flat =
      add_common(app.add_subcommand("check-flat", "flatness of a weight for a shape class"));
  check_flat->add_option("weight", file_a)->required();
  bool direct_mode = false;
  check_flat->add_flag("--direct", direct_mode, "use the direct commutation oracle");
  CLI::App* check_dfiltered =
      add_common(app.add_subcommand("check-dfiltered", "D-filteredness of a category"));
  check_dfiltered->add_option("file", file_a)->required();
  bool oracle_mode = false;
  check_dfiltered->add_flag("--oracle", oracle_mode, "bypass the structural shortcuts");
  CLI::App* commute =
      add_common(app.add_subcommand("commute-refute", "search for a commutation counterexample"));
  commute->add_option("index", file_a)->required();
  commute->add_option("shape", file_b)->required();
  int category_bound = 4;
  CLI::App* soundness =
      add_common(app.add_subcommand("soundness-search", "weak-soundness counterexample search"));
  soundness->add_option("--category-bound", category_bound, "largest corpus category");
  CLI::App* closure = add_common(app.add_subcommand("closure", "bounded colimit closure"));
  closure->add_option("file", file_a)->required();
  CLI::App* present =
      add_common(app.add_subcommand("present-reflexive", "canonical reflexive presentation"));
  present->add_option("weight", file_a)->required();
  CLI::App* decompose =
      add_common(app.add_subcommand("decompose", "colimit decomposition over components"));
  decompose->add_option("shape", file_a)->required();
  decompose->add_option("diagram", file_b)->required();
  CLI::App* cauchy = add_common(app.add_subcommand("cauchy", "is the weight a Cauchy weight"));
  cauchy->add_option("weight", file_a)->required();
  CLI::App* models = add_common(app.add_subcommand("models", "enumerate models of a theory"));
  models->add_option("theory", file_a)->required();
  models->add_option("--size", size, "carrier size");
  CLI::App* morphisms =
      add_common(app.add_subcommand("morphisms", "enumerate structure morphisms"));
  morphisms->add_option("theory", file_a)->required();
  morphisms->add_option("from", file_b)->required();
  morphisms->add_option("to", file_c)->required();
  CLI::App* free_cmd = add_common(app.add_subcommand("free", "free model on generators"));
  free_cmd->add_option("theory", file_a)->required();
  free_cmd->add_option("--generators", generators, "generator count");
  CLI::App* orthogonal =
      add_common(app.add_subcommand("orthogonal", "orthogonality against the bundled quotient"));
  orthogonal->add_option("theory", file_a)->required();
  orthogonal->add_option("structure", file_b)->required();
  CLI::App* monad_algebras =
      add_common(app.add_subcommand("monad-algebras", "Eilenberg-Moore algebra count"));
  monad_algebras->add_option("monad", file_a)->required();
  monad_algebras->add_option("--size", size, "carrier size");
  CLI::App* verify_paper =
      add_common(app.add_subcommand("verify-paper", "run the bundled verification suite"));

  std::vector<std::string> argv_copy = args;
  try {
    std::vector<const char*> argv;
    argv.push_back("catlab");
    for (const auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    Config cfg = make_config(common);
    if (validate->parsed()) {
      ReportBuilder rb("validate", argv_copy, common);
      rb.add_input(file_a);
      FinCategory c = load_category(file_a);
      rb.json()["valid"] = true;
      rb.json()["objects"] = c.num_objects();
      rb.json()["morphisms"] = c.num_morphisms();
      return rb.finish(out, err, kExitOk,
                       "valid category with " + std::to_string(c.num_objects()) + " objects, " +
                           std::to_string(c.num_morphisms()) + " morphisms");
    }
    if (limit_cmd->parsed() || colimit_cmd->parsed()) {
      bool is_limit = limit_cmd->parsed();
      ReportBuilder rb(is_limit ? "limit" : "colimit", argv_copy, common);
      rb.add_input(file_a);
      SetFunctor f = load_weight(file_a);
      if (f.variance() != Variance::Covariant)
        throw ValidationError("VarianceMismatch", "limits and colimits expect a covariant diagram");
      bool check = f.total_size() <= cfg.universality_threshold;
      if (is_limit) {
        LimitResult lim = limit(f);
        rb.json()["size"] = lim.size;
        bool verified = !check || verify_limit_universality(f, lim, cfg.universality_apex);
        if (check) rb.json()["universality_verified"] = verified;
        return rb.finish(out, err, verified ? kExitOk : kExitRefuted,
                         "limit size " + std::to_string(lim.size));
      }
      ColimitResult col = colimit(f);
      rb.json()["size"] = col.size;
      bool verified = !check || verify_colimit_universality(f, col, cfg.universality_apex);
      if (check) rb.json()["universality_verified"] = verified;
      return rb.finish(out, err, verified ? kExitOk : kExitRefuted,
                       "colimit size " + std::to_string(col.size));
    }
    if (wcolim->parsed()) {
      ReportBuilder rb("wcolim", argv_copy, common);
      rb.add_input(file_a);
      rb.add_input(file_b);
      SetFunctor m = load_weight(file_a);
      SetFunctor h = load_weight(file_b);
      WeightedColimitResult w = weighted_colimit(m, h);
      rb.json()["size"] = w.size;
      return rb.finish(out, err, kExitOk, "weighted colimit size " + std::to_string(w.size));
    }
    if (elements->parsed()) {
      ReportBuilder rb("elements", argv_copy, common);
      rb.add_input(file_a);
      SetFunctor m = load_weight(file_a);
      ElementsCategory el = category_of_elements(m);
      rb.json()["total"] = category_to_json(el.total);
      rb.json()["objects"] = el.total.num_objects();
      rb.json()["morphisms"] = el.total.num_morphisms();
      return rb.finish(out, err, kExitOk,
                       "elements category with " + std::to_string(el.total.num_objects()) +
                           " objects");
    }
    if (check_filtered->parsed() || check_sifted->parsed()) {
      bool filtered = check_filtered->parsed();
      ReportBuilder rb(filtered ? "check-filtered" : "check-sifted", argv_copy, common);
      rb.add_input(file_a);
      FinCategory c = load_category(file_a);
      Verdict v = filtered ? is_filtered(c) : is_sifted(c);
      return finish_verdict(rb, out, err, v, filtered ? "filtered" : "sifted");
    }
    if (check_flat->parsed()) {
      ReportBuilder rb("check-flat", argv_copy, common);
      if (!common.recheck.empty()) return handle_recheck(common.recheck, rb, out, err);
      rb.add_input(file_a);
      SetFunctor m = load_weight(file_a);
      ShapeClass d = parse_class(common.shape_class, common.bound);
      Verdict v = direct_mode ? is_flat_direct(m, d, common.value_bound, cfg)
                              : is_flat(m, d, common.value_bound, cfg);
      return finish_verdict(rb, out, err, v, "flat for " + d.name());
    }
    if (check_dfiltered->parsed()) {
      ReportBuilder rb("check-dfiltered", argv_copy, common);
      if (!common.recheck.empty()) return handle_recheck(common.recheck, rb, out, err);
      rb.add_input(file_a);
      FinCategory c = load_category(file_a);
      ShapeClass d = parse_class(common.shape_class, common.bound);
      Verdict v = is_d_filtered(c, d, common.value_bound, cfg,
                                oracle_mode ? DecisionMode::Oracle : DecisionMode::Structural);
      return finish_verdict(rb, out, err, v, "D-filtered for " + d.name());
    }
    if (commute->parsed()) {
      ReportBuilder rb("commute-refute", argv_copy, common);
      if (!common.recheck.empty()) return handle_recheck(common.recheck, rb, out, err);
      rb.add_input(file_a);
      rb.add_input(file_b);
      FinCategory index = load_category(file_a);
      FinCategory shape = load_category(file_b);
      Verdict v = commutation_refute(index, shape, common.value_bound, cfg);
      return finish_verdict(rb, out, err, v, "commutation");
    }
    if (soundness->parsed()) {
      ReportBuilder rb("soundness-search", argv_copy, common);
      if (!common.recheck.empty()) return handle_recheck(common.recheck, rb, out, err);
      ShapeClass d = parse_class(common.shape_class, common.bound);
      Verdict v = weak_soundness_search(d, category_bound, common.value_bound, cfg);
      return finish_verdict(rb, out, err, v, "weak soundness of " + d.name());
    }
    if (closure->parsed()) {
      ReportBuilder rb("closure", argv_copy, common);
      rb.add_input(file_a);
      FinCategory c = load_category(file_a);
      auto base = std::make_shared<const FinCategory>(std::move(c));
      ShapeClass d = parse_class(common.shape_class, common.bound);
      auto members = bounded_closure(base, d, common.depth, common.value_bound, cfg);
      rb.json()["members"] = OrderedJson::array();
      for (const auto& m : members) {
        OrderedJson e;
        e["stage"] = m.stage;
        e["presheaf"] = set_functor_to_json(m.presheaf);
        e["depth"] = m.provenance->depth();
        rb.json()["members"].push_back(std::move(e));
      }
      return rb.finish(out, err, kExitOk,
                       std::to_string(members.size()) + " classes through depth " +
                           std::to_string(common.depth));
    }
    if (present->parsed()) {
      ReportBuilder rb("present-reflexive", argv_copy, common);
      rb.add_input(file_a);
      SetFunctor p = load_weight(file_a);
      ReflexivePresentation pres = reflexive_presentation(p);
      PresentationEvaluation ev = evaluate_presentation(pres);
      bool iso = presheaf_iso(ev.coequalizer, p).has_value();
      rb.json()["r0_summands"] = pres.r0_objects.size();
      rb.json()["r1_summands"] = pres.r1_objects.size();
      rb.json()["section_laws"] = ev.section_laws;
      rb.json()["roundtrip_iso"] = iso;
      return rb.finish(out, err, ev.section_laws && iso ? kExitOk : kExitRefuted,
                       "reflexive presentation round-trip " +
                           std::string(iso ? "verified" : "FAILED"));
    }
    if (decompose->parsed()) {
      ReportBuilder rb("decompose", argv_copy, common);
      rb.add_input(file_a);
      rb.add_input(file_b);
      FinCategory shape = load_category(file_a);
      SetFunctor f = load_weight(file_b);
      CoproductDecomposition dec = coproduct_decomposition(shape, f);
      rb.json()["components"] = dec.component_colimit_sizes;
      rb.json()["total"] = dec.total_size;
      rb.json()["bijective"] = dec.bijective;
      return rb.finish(out, err, dec.bijective ? kExitOk : kExitRefuted,
                       "decomposition " + std::string(dec.bijective ? "verified" : "FAILED"));
    }
    if (cauchy->parsed()) {
      ReportBuilder rb("cauchy", argv_copy, common);
      if (!common.recheck.empty()) return handle_recheck(common.recheck, rb, out, err);
      rb.add_input(file_a);
      SetFunctor m = load_weight(file_a);
      Verdict v = is_cauchy_weight(m, common.value_bound, cfg);
      return finish_verdict(rb, out, err, v, "Cauchy weight");
    }
    if (models->parsed()) {
      ReportBuilder rb("models", argv_copy, common);
      rb.add_input(file_a);
      Theory t = load_theory(file_a);
      auto all = enumerate_models(t, size, cfg);
      rb.json()["size"] = size;
      rb.json()["count"] = all.size();
      return rb.finish(out, err, kExitOk,
                       std::to_string(all.size()) + " models on carrier " + std::to_string(size));
    }
    if (morphisms->parsed()) {
      ReportBuilder rb("morphisms", argv_copy, common);
      rb.add_input(file_a);
      rb.add_input(file_b);
      rb.add_input(file_c);
      Theory t = load_theory(file_a);
      Structure a = load_structure(file_b, t.language);
      Structure b = load_structure(file_c, t.language);
      auto homs = enumerate_morphisms(t.language, a, b);
      rb.json()["count"] = homs.size();
      rb.json()["morphisms"] = homs;
      return rb.finish(out, err, kExitOk, std::to_string(homs.size()) + " morphisms");
    }
    if (free_cmd->parsed()) {
      ReportBuilder rb("free", argv_copy, common);
      rb.add_input(file_a);
      Theory t = load_theory(file_a);
      FreeStructureResult f = free_structure_bounded(t, generators, 64, cfg);
      rb.json()["stabilized"] = f.stabilized;
      rb.json()["growth"] = f.growth;
      if (f.stabilized) {
        rb.json()["carrier"] = f.structure.carrier;
        rb.json()["generator_classes"] = f.generator_class;
        return rb.finish(out, err, kExitOk,
                         "free model carrier " + std::to_string(f.structure.carrier));
      }
      return rb.finish(out, err, kExitInconclusive,
                       "did not stabilize within the class budget");
    }
    if (orthogonal->parsed()) {
      ReportBuilder rb("orthogonal", argv_copy, common);
      rb.add_input(file_a);
      rb.add_input(file_b);
      Theory t = load_theory(file_a);
      Structure a = load_structure(file_b, t.language);
      FreeStructureResult w = free_structure_bounded(t, 1, 64, cfg);
      if (!w.stabilized)
        return rb.finish(out, err, kExitInconclusive,
                         "free model on one generator does not stabilize; no bundled quotient");
      bool orth =
          orthogonality_check_free_source(t.language, a, w.structure, w.generator_class);
      rb.json()["orthogonal"] = orth;
      return rb.finish(out, err, orth ? kExitOk : kExitRefuted,
                       orth ? "orthogonal to the bundled quotient" : "not orthogonal");
    }
    if (monad_algebras->parsed()) {
      ReportBuilder rb("monad-algebras", argv_copy, common);
      rb.add_input(file_a);
      MonadTable t = load_monad(file_a);
      std::string why;
      if (!t.check_laws(std::min(3, t.window() - 1), &why))
        throw ValidationError("BadMonadTable", why);
      AlgebraCount ac = monad_algebra_count(t, size, cfg);
      rb.json()["size"] = size;
      rb.json()["count"] = ac.count;
      return rb.finish(out, err, kExitOk,
                       std::to_string(ac.count) + " algebras on carrier " + std::to_string(size));
    }
    if (verify_paper->parsed()) {
      ReportBuilder rb("verify-paper", argv_copy, common);
      bool deep = common.profile == "deep";
      auto results = run_acceptance(deep);
      rb.json()["profile"] = common.profile;
      rb.json()["report"] = acceptance_report(results, true);
      bool all = true;
      for (const auto& c : results) {
        err << "criterion " << c.id << " [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name
            << " — " << c.details << "\n";
        all = all && c.pass;
      }
      return rb.finish(out, err, all ? kExitOk : kExitRefuted,
                       all ? "all criteria pass" : "some criteria FAILED");
    }
  } catch (const ValidationError& e) {
    err << "input error [" << e.kind() << "] " << e.detail() << "\n";
    return kExitInput;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitInconclusive;
  }
  err << "unknown subcommand\n";
  return kExitUsage;
}

}  // namespace catlab
