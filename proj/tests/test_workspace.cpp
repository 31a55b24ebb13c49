#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <set>

#include "gnskit/commands.hpp"
#include "gnskit/workspace.hpp"
#include "support/oracles.hpp"

using namespace gnskit;

namespace {

const std::filesystem::path fixtures{GNSKIT_FIXTURE_DIR};

gnskit::testing::CliRun run_cli(const std::string& args) {
  return gnskit::testing::run_cli(GNSKIT_CLI_PATH, args);
}

std::string fx(const char* name) { return (fixtures / name).string(); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Usage;
}

const char* corrupt_c = R"({
  "algebras": {
    "c": {"dim": 1, "structure_constants": [[[[2, 0]]]], "involution": [[[1, 0]]], "unit": [[1, 0]]}
  }
})";

}  // namespace

TEST_CASE("shipped fixtures load") {
  const auto z2 = parse_workspace(fixtures / "z2.json");
  CHECK(z2.algebras.size() == 1);
  CHECK(z2.functionals.size() == 3);
  CHECK(z2.functional("rho_tm1").functional.values(1) == Complex(-1.0, 0.0));
  CHECK(z2.algebra("z2").labels() == std::vector<std::string>{"e", "g"});
  for (const char* name : {"z3.json", "s3.json", "m2.json", "m2_states.json", "homs.json"}) {
    CAPTURE(name);
    CHECK_NOTHROW(parse_workspace(fixtures / name));
  }
  const auto homs = parse_workspace(fixtures / "homs.json");
  CHECK(homs.homomorphisms.size() == 3);
  CHECK(homs.homomorphism("sigma").hom.target().dim() == 4);
}

TEST_CASE("corrupted structure constants fail validation") {
  try {
    parse_workspace_text(corrupt_c);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ValidationError);
    const std::string msg = e.what();
    CHECK(msg.find("unit") != std::string::npos);
    CHECK(msg.find("'c'") != std::string::npos);
  }
}

TEST_CASE("parse errors carry locations") {
  CHECK(kind_of([] { parse_workspace_text(""); }) == ErrorKind::ParseError);
  try {
    parse_workspace_text("{\n  \"algebras\": {\n    \"a\": {\"builder\": \"matrix\", \"m\": 2,}\n  }\n}");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    parse_workspace_text(R"({"algebras": {"a": {"builder": "matrix", "m": 2}},
                              "functionals": {"f": {"algebra": "a", "values": [[1, 0], [0], [0, 0], [1, 0]]}}})");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("functionals.f.values[1]") != std::string::npos);
  }
  CHECK(kind_of([] { parse_workspace_text(R"({"extras": {}})"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_workspace(fixtures / "missing.json"); }) == ErrorKind::IoError);
}

TEST_CASE("reference and dimension errors") {
  CHECK(kind_of([] {
          parse_workspace_text(R"({"functionals": {"f": {"algebra": "nope", "values": [[1, 0]]}}})");
        }) == ErrorKind::ValidationError);
  CHECK(kind_of([] {
          parse_workspace_text(R"({"algebras": {"a": {"builder": "cyclic", "order": 2}},
                                   "functionals": {"f": {"algebra": "a", "values": [[1, 0]]}}})");
        }) == ErrorKind::ValidationError);
  CHECK(kind_of([] {
          parse_workspace_text(R"({"algebras": {"a": {"builder": "cyclic", "order": 2}},
                                   "kernels": {"k": {"algebra": "a", "matrix": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]}}})");
        }) == ErrorKind::ValidationError);
  CHECK(kind_of([] { parse_workspace(fixtures / "z2.json").kernel("nope"); }) == ErrorKind::UnknownEntity);
}

TEST_CASE("serialize then reparse gives an equal workspace") {
  for (const char* name : {"z2.json", "z3.json", "s3.json", "m2.json", "m2_states.json", "homs.json"}) {
    CAPTURE(name);
    const auto ws = parse_workspace(fixtures / name);
    const auto text = serialize_workspace(ws).dump(2);
    const auto again = parse_workspace_text(text);
    REQUIRE(again.algebras.size() == ws.algebras.size());
    for (const auto& [k, a] : ws.algebras) CHECK(same_algebra(a, again.algebra(k), 0.0));
    for (const auto& [k, f] : ws.functionals) {
      CHECK(again.functional(k).algebra == f.algebra);
      CHECK(again.functional(k).functional.values == f.functional.values);
    }
    for (const auto& [k, kern] : ws.kernels) {
      CHECK(again.kernel(k).algebra == kern.algebra);
      CHECK(again.kernel(k).kernel.matrix() == kern.kernel.matrix());
    }
    for (const auto& [k, h] : ws.homomorphisms) CHECK(again.homomorphism(k).hom.matrix() == h.hom.matrix());
    CHECK(serialize_workspace(again).dump(2) == text);
  }
}

TEST_CASE("run_command reports") {
  const auto ws = parse_workspace(fixtures / "z2.json");
  const auto gns = run_command(ws, "gns", {"z2", "rho_t0"}, {});
  CHECK(gns["result"]["rep_dim"] == 2);
  CHECK(gns["result"]["reproduction_residual"].get<double>() < 1e-12);
  CHECK(gns["tolerances"]["match_tol"].get<double>() == 1e-8);
  CHECK(gns["seed"] == 0);

  CHECK(run_command(ws, "cone-leq", {"k1", "k1"}, {})["result"]["leq"] == true);
  CHECK(run_command(ws, "exclude", {"k1", "k2"}, {})["result"]["mutually_excluding"] == true);
  CHECK(run_command(ws, "subrep", {"k1", "double"}, {})["result"]["ordinary_subrepresentation"] == true);
  CHECK(kind_of([&] { run_command(ws, "cone-diff", {"id2", "ones"}, {}); }) == ErrorKind::NotDominated);
  CHECK(kind_of([&] { run_command(ws, "frobnicate", {}, {}); }) == ErrorKind::UnknownVerb);
  CHECK(kind_of([&] { run_command(ws, "gns", {"z2"}, {}); }) == ErrorKind::Usage);

  const auto m2 = parse_workspace(fixtures / "m2.json");
  CommandOptions opts;
  opts.seed = 7;
  const auto dec = run_command(m2, "decompose", {"m2", "trace"}, opts);
  CHECK(dec["result"]["components"].size() == 2);
  REQUIRE(dec["result"]["multiplicity_classes"].size() == 1);
  CHECK(dec["result"]["multiplicity_classes"][0].size() == 2);
  CHECK(dec["seed"] == 7);
}

TEST_CASE("every verb runs on the fixtures") {
  const auto z2 = parse_workspace(fixtures / "z2.json");
  const auto homs = parse_workspace(fixtures / "homs.json");
  const std::vector<std::pair<std::string, std::vector<std::string>>> z2_calls = {
      {"validate", {"z2"}},
      {"gns", {"z2", "rho_t1"}},
      {"kernel", {"z2", "rho_t0"}},
      {"functional", {"z2", "k1"}},
      {"cone-sum", {"k1", "k2"}},
      {"cone-scale", {"2.5", "k1"}},
      {"cone-leq", {"k1", "double"}},
      {"cone-diff", {"double", "k1"}},
      {"exclude", {"k1", "k2"}},
      {"min-scale", {"k1", "id2"}},
      {"subrep", {"k1", "double"}},
      {"chain", {"id2", "fill"}},
      {"weighted-sum", {"0.5", "k1", "0.5", "k2"}},
      {"decompose", {"z2", "rho_t0"}},
      {"equiv", {"z2", "rho_t0", "rho_t0"}},
      {"audit", {"z2", "rho_t1", "rho_tm1", "2"}},
      {"roundtrip", {"z2", "rho_t0"}},
  };
  std::set<std::string> covered;
  for (const auto& [verb, args] : z2_calls) {
    CAPTURE(verb);
    CHECK_NOTHROW(run_command(z2, verb, args, {}));
    covered.insert(verb);
  }
  const auto pulled = run_command(homs, "pullback", {"sigma", "k_trace"}, {});
  covered.insert("pullback");
  CHECK(pulled["result"]["matrix"][0][0][0].get<double>() == doctest::Approx(2.0));
  CHECK(kind_of([&] { run_command(homs, "pullback", {"sigma", "k_bad"}, {}); }) == ErrorKind::NotStarInvariant);
  for (const auto& verb : command_verbs()) CHECK(covered.count(verb) == 1);
}

TEST_CASE("CLI exit codes") {
  CHECK(run_cli(fx("z2.json") + " gns z2 rho_t0").status == 0);
  CHECK(run_cli(fx("z2.json") + " cone-leq k1 k1").status == 0);
  CHECK(run_cli(fx("z2.json") + " cone-diff id2 ones").status == 1);
  CHECK(run_cli(fx("z2.json") + " frobnicate").status == 2);
  CHECK(run_cli(fx("z2.json") + " gns z2 nope").status == 2);
  CHECK(run_cli(fx("missing.json") + " validate z2").status == 2);
  CHECK(run_cli(fx("z2.json") + " gns z2 rho_t0 --output yaml").status == 2);
  CHECK(run_cli("").status == 2);
}

TEST_CASE("CLI output is deterministic") {
  const auto a = run_cli(fx("m2.json") + " decompose m2 trace --seed 7");
  const auto b = run_cli(fx("m2.json") + " decompose m2 trace --seed 7");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  const auto report = Json::parse(a.out);
  CHECK(report["result"]["components"].size() == 2);
  CHECK(report["seed"] == 7);

  const auto tol = Json::parse(run_cli(fx("z2.json") + " gns z2 rho_t0 --tol-match 1e-6").out);
  CHECK(tol["tolerances"]["match_tol"].get<double>() == 1e-6);
  const auto text = run_cli(fx("z2.json") + " cone-leq k1 k1 --output text");
  CHECK(text.out.find("result.leq = true") != std::string::npos);
}
