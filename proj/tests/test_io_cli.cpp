#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "catlab/cli.hpp"
#include "catlab/io.hpp"

using namespace catlab;

namespace {

const char* kData = CATLAB_DATA_DIR;

std::string path(const std::string& rel) { return std::string(kData) + "/" + rel; }

int cli(const std::vector<std::string>& args, std::string* out_str = nullptr,
        std::string* err_str = nullptr) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  if (out_str) *out_str = out.str();
  if (err_str) *err_str = err.str();
  return code;
}

std::string strip_timing(std::string report) {
  // remove the wall-clock and elapsed fields wherever they occur
  for (const char* key : {"\"wall_clock_ms\"", "\"elapsed_ms\""}) {
    size_t pos;
    while ((pos = report.find(key)) != std::string::npos) {
      size_t end = report.find_first_of(",}\n", report.find(':', pos));
      report.erase(pos, end - pos);
    }
  }
  return report;
}

}  // namespace

TEST_CASE("category files load and validate") {
  FinCategory c = load_category(path("categories/parallel.cat"));
  CHECK(c.num_objects() == 2);
  CHECK(c.num_morphisms() == 4);
  FinCategory e = load_category(path("categories/empty.cat"));
  CHECK(e.num_objects() == 0);
  FinCategory idem = load_category(path("categories/idempotent.cat"));
  CHECK(idem.num_morphisms() == 2);
}

TEST_CASE("weight files resolve their category reference") {
  SetFunctor w = load_weight(path("weights/delta1_parallel.wgt"));
  CHECK(w.variance() == Variance::Contravariant);
  CHECK(w.carrier(0) == 1);
  SetFunctor d = load_weight(path("weights/diagram_coeq.wgt"));
  CHECK(d.variance() == Variance::Covariant);
}

TEST_CASE("theory and structure files load") {
  Theory t = load_theory(path("theories/involution.thy"));
  CHECK(t.language.symbols().size() == 1);
  CHECK(t.equations.size() == 1);
  Structure s = load_structure(path("theories/swap_model.str"), t.language);
  CHECK(satisfies(t, s).ok);
  Structure c = load_structure(path("theories/const_structure.str"), t.language);
  CHECK(!satisfies(t, c).ok);
}

TEST_CASE("monad file loads and passes the laws") {
  MonadTable m = load_monad(path("monads/maybe.mon"));
  std::string why;
  CHECK(m.check_laws(2, &why));
  CHECK(monad_algebra_count(m, 2).count == 2);
}

TEST_CASE("witness serialization round-trips through json") {
  Verdict v = commutation_refute(cats::discrete(2), cats::discrete(2), 2);
  REQUIRE(v.state == Verdict::State::Refuted);
  OrderedJson j = witness_to_json(*v.witness);
  CommutationWitness back = witness_from_json(nlohmann::json::parse(j.dump()));
  CHECK(recheck_witness(back));
}

TEST_CASE("cli: validate and check-sifted exit codes") {
  std::string out, err;
  CHECK(cli({"validate", path("categories/arrow.cat")}, &out, &err) == 0);
  CHECK(out.find("\"valid\": true") != std::string::npos);

  // not sifted: exit 1, certificate names the failing pair
  CHECK(cli({"check-sifted", path("categories/discrete2.cat")}, &out, &err) == 1);
  CHECK(out.find("decided-false") != std::string::npos);
  CHECK(cli({"check-sifted", path("categories/cospan.cat")}, &out, &err) == 0);

  // malformed input: exit 2
  CHECK(cli({"validate", path("categories/nonexistent.cat")}, &out, &err) == 2);
  // unknown subcommand: usage error
  CHECK(cli({"frobnicate"}, &out, &err) == 64);
}

TEST_CASE("cli: models count and colimit") {
  std::string out;
  CHECK(cli({"models", path("theories/involution.thy"), "--size", "4"}, &out) == 0);
  CHECK(out.find("\"count\": 10") != std::string::npos);

  CHECK(cli({"colimit", path("weights/diagram_coeq.wgt")}, &out) == 0);
  CHECK(out.find("\"size\": 1") != std::string::npos);

  CHECK(cli({"wcolim", path("weights/two_points.wgt"), "--class", "all-finite"}, &out) == 64);
}

TEST_CASE("cli: commute-refute emits a recheckable witness") {
  std::string out;
  int code = cli({"commute-refute", path("categories/discrete2.cat"),
                  path("categories/empty.cat"), "--value-bound", "1"},
                 &out);
  CHECK(code == 1);
  // feed the report back through --recheck
  std::string tmp = "/tmp/catlab_witness_report.json";
  {
    std::ofstream f(tmp);
    f << out;
  }
  CHECK(cli({"commute-refute", path("categories/discrete2.cat"), path("categories/empty.cat"),
             "--recheck", tmp}) == 0);
}

TEST_CASE("cli: check-flat on both paths and check-dfiltered") {
  std::string out;
  // two-element weight on the terminal category is not flat for products
  CHECK(cli({"check-flat", path("weights/two_points.wgt"), "--class",
             "finite-discrete-nonempty", "--bound", "2"},
            &out) == 1);
  CHECK(cli({"check-flat", path("weights/two_points.wgt"), "--class",
             "finite-discrete-nonempty", "--bound", "2", "--direct"},
            &out) == 1);
  // representables are flat
  CHECK(cli({"check-flat", path("weights/rep_b_arrow.wgt"), "--class", "all-finite"}, &out) == 0);
  // the direct oracle on a flat weight is inconclusive at the bound: exit 3
  CHECK(cli({"check-flat", path("weights/rep_b_arrow.wgt"), "--class",
             "finite-discrete-nonempty", "--bound", "2", "--direct"},
            &out) == 3);
  CHECK(cli({"check-dfiltered", path("categories/cospan.cat"), "--class", "all-finite"}, &out) ==
        0);
  CHECK(cli({"check-dfiltered", path("categories/parallel.cat"), "--class",
             "finite-discrete-nonempty"},
            &out) == 1);
}

TEST_CASE("cli: free, orthogonal, monad-algebras, cauchy, elements") {
  std::string out;
  CHECK(cli({"free", path("theories/involution.thy"), "--generators", "1"}, &out) == 0);
  CHECK(out.find("\"carrier\": 2") != std::string::npos);
  CHECK(cli({"orthogonal", path("theories/involution.thy"), path("theories/swap_model.str")},
            &out) == 0);
  CHECK(cli({"orthogonal", path("theories/involution.thy"),
             path("theories/const_structure.str")},
            &out) == 1);
  CHECK(cli({"monad-algebras", path("monads/maybe.mon"), "--size", "2"}, &out) == 0);
  CHECK(out.find("\"count\": 2") != std::string::npos);
  CHECK(cli({"cauchy", path("weights/rep_b_arrow.wgt")}, &out) == 0);
  CHECK(cli({"elements", path("weights/two_points.wgt")}, &out) == 0);
  CHECK(out.find("\"objects\": 2") != std::string::npos);
}

TEST_CASE("cli: present-reflexive and decompose") {
  std::string out;
  CHECK(cli({"present-reflexive", path("weights/two_points.wgt")}, &out) == 0);
  CHECK(out.find("\"roundtrip_iso\": true") != std::string::npos);
  CHECK(cli({"decompose", path("categories/discrete2.cat"),
             path("weights/diagram_coeq_d2.wgt")}) == 2);  // missing file -> input error
}

TEST_CASE("cli: soundness-search on an explicit class") {
  std::string out;
  int code = cli({"soundness-search", "--class",
                  std::string("explicit:") + path("categories/cospan.cat"), "--category-bound",
                  "2", "--value-bound", "2"},
                 &out);
  // the pullback shape alone: the search refutes at desk scale
  CHECK(code == 1);
  CHECK(out.find("refuted") != std::string::npos);
}

TEST_CASE("cli: reports are deterministic modulo the wall clock") {
  std::string a, b;
  cli({"check-sifted", path("categories/discrete2.cat")}, &a);
  cli({"check-sifted", path("categories/discrete2.cat")}, &b);
  CHECK(strip_timing(a) == strip_timing(b));
  // witness-carrying reports too: the canonically-first witness is stable
  std::vector<std::string> refute = {"commute-refute", path("categories/parallel.cat"),
                                     path("categories/discrete2.cat"), "--value-bound", "2"};
  cli(refute, &a);
  cli(refute, &b);
  CHECK(a.find("witness") != std::string::npos);
  CHECK(strip_timing(a) == strip_timing(b));
}
