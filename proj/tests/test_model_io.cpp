#include <doctest.h>

#include <algorithm>
#include <functional>

#include "stablelab/model_io.hpp"
#include "stablelab/suites.hpp"
#include "test_util.hpp"

using namespace stablelab;
using namespace stablelab::testutil;

TEST_SUITE_BEGIN("model_io");

namespace {

const char* kDiamond = R"({
  "elements": ["0", "a", "b", "1"],
  "order": [["0","a"], ["0","b"], ["a","1"], ["b","1"]],
  "valuation": {"p": ["a","1"], "q": ["b","1"]}
})";

const char* kDiamondWithBimodule = R"({
  "elements": ["0", "a", "b", "1"],
  "order": [["0","a"], ["0","b"], ["a","1"], ["b","1"]],
  "valuation": {"p": ["a","1"]},
  "bimodule": [["0","0"], ["0","a"], ["0","b"], ["0","1"],
               ["a","a"], ["a","1"], ["b","b"], ["b","1"], ["1","1"]]
})";

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("a diamond fixture loads with four worlds") {
  LoadedModel m = parse_model(kDiamond);
  CHECK(m.model.frame.n() == 4);
  CHECK(m.names == std::vector<std::string>{"0", "a", "b", "1"});
  CHECK(m.model.frame.top == m.index_of("1"));
  CHECK(m.model.valuation.at("p") == m.model.frame.up_set(m.index_of("a")));
  CHECK(force(m.model, m.index_of("0"), *parse("p | q")));
}

TEST_CASE("the order closure is taken on load") {
  // Only the covers are given; transitivity fills in 0 <= 1.
  LoadedModel m = parse_model(kDiamond);
  CHECK(m.model.frame.le(m.index_of("0"), m.index_of("1")));
}

TEST_CASE("invalid valuations are rejected with a witness") {
  std::string msg = message_of([] {
    parse_model(R"({
      "elements": ["0", "a", "b", "1"],
      "order": [["0","a"], ["0","b"], ["a","1"], ["b","1"]],
      "valuation": {"p": ["a","b","1"]}
    })");
  });
  CHECK(msg.find("valuation 'p' is not a filter") != std::string::npos);
  CHECK(msg.find("missing a&b") != std::string::npos);
}

TEST_CASE("non-distributive frames are rejected with a witness") {
  std::string msg = message_of([] {
    parse_model(R"({
      "elements": ["0", "a", "b", "c", "1"],
      "order": [["0","a"], ["a","c"], ["c","1"], ["0","b"], ["b","1"]],
      "valuation": {}
    })");
  });
  CHECK(msg.find("frame not distributive") != std::string::npos);
  CHECK(msg.find("(c,a,b)") != std::string::npos);
}

TEST_CASE("schema violations are rejected") {
  CHECK(message_of([] {
          parse_model(R"({"elements": ["x"], "order": [], "valuation": {}, "extra": 1})");
        }).find("unknown field 'extra'") != std::string::npos);

  CHECK(message_of([] {
          parse_model(R"({"elements": ["x","x"], "order": [], "valuation": {}})");
        }).find("duplicate element") != std::string::npos);

  CHECK(message_of([] {
          parse_model(R"({"elements": ["x","y"],
                          "order": [["x","y"],["y","x"]], "valuation": {}})");
        }).find("not antisymmetric") != std::string::npos);

  CHECK(message_of([] {
          parse_model(R"({"elements": ["x","y"], "order": [], "valuation": {}})");
        }).find("not a lattice") != std::string::npos);

  CHECK(message_of([] {
          parse_model(R"({"elements": ["x"], "order": [], "valuation": {"p": ["zz"]}})");
        }).find("unknown element") != std::string::npos);

  CHECK(message_of([] { parse_model("not json at all"); }).find("parse error") !=
        std::string::npos);
}

TEST_CASE("bimodules load and invalid ones carry the condition name") {
  LoadedModel m = parse_model(kDiamondWithBimodule);
  REQUIRE(m.model.bimodule.has_value());
  CHECK(m.model.bimodule->at(m.index_of("0"), m.index_of("a")));

  std::string msg = message_of([] {
    parse_model(R"({
      "elements": ["0", "1"],
      "order": [["0","1"]],
      "valuation": {},
      "bimodule": []
    })");
  });
  CHECK(msg.find("condition (ii)") != std::string::npos);
}

TEST_CASE("export then load is the identity") {
  for (const char* fixture : {kDiamond, kDiamondWithBimodule}) {
    LoadedModel m = parse_model(fixture);
    nlohmann::json doc = model_to_json(m.model, m.names);
    LoadedModel back = parse_model(doc.dump());
    CHECK(back.names == m.names);
    CHECK(same_lattice(back.model.frame, m.model.frame));
    CHECK(back.model.valuation == m.model.valuation);
    CHECK(back.model.bimodule.has_value() == m.model.bimodule.has_value());
    if (m.model.bimodule) CHECK(back.model.bimodule->rel == m.model.bimodule->rel);
  }
}

TEST_CASE("dot export shapes") {
  LoadedModel m = parse_model(kDiamond);
  std::string hasse = export_dot(m, DotWhat::Hasse);
  CHECK(std::count(hasse.begin(), hasse.end(), '\n') == 4 + 4 + 3);  // nodes, edges, wrapper
  CHECK(hasse.find("label=\"a\"") != std::string::npos);
  CHECK(hasse.find("n0 -> n1") != std::string::npos);
  // Cover edges only: no direct bottom-to-top edge.
  CHECK(hasse.find("n0 -> n3") == std::string::npos);

  LoadedModel one = parse_model(R"({"elements": ["w"], "order": [], "valuation": {}})");
  std::string trivial = export_dot(one, DotWhat::Hasse);
  CHECK(trivial.find("->") == std::string::npos);
  CHECK(trivial.find("label=\"w\"") != std::string::npos);

  std::string filters = export_dot(m, DotWhat::Filters);
  CHECK(std::count(filters.begin(), filters.end(), '\n') == 4 + 4 + 3);
  CHECK(filters.find("{1}") != std::string::npos);
  CHECK(filters.find("{a,1}") != std::string::npos);

  CHECK_THROWS_AS(export_dot(m, DotWhat::Bimodule), Error);
  LoadedModel wb = parse_model(kDiamondWithBimodule);
  CHECK(export_dot(wb, DotWhat::Bimodule).find("label=\"R\"") != std::string::npos);

  // Deterministic output.
  CHECK(export_dot(m, DotWhat::Hasse) == export_dot(m, DotWhat::Hasse));
}

TEST_CASE("malformed documents never escape the validation channel") {
  const char* bad[] = {
      "[1,2,3]",
      R"({"elements": "x", "order": [], "valuation": {}})",
      R"({"elements": [1], "order": [], "valuation": {}})",
      R"({"elements": ["x"], "order": [["x"]], "valuation": {}})",
      R"({"elements": ["x"], "order": {}, "valuation": {}})",
      R"({"elements": ["x"], "order": [], "valuation": []})",
      R"({"elements": ["x"], "order": [], "valuation": {"p": "x"}})",
      R"({"elements": ["x"], "order": [], "valuation": {}, "bimodule": [["x"]]})",
      R"({"elements": [], "order": [], "valuation": {}})",
      R"({"elements": ["x"], "valuation": {}})",
  };
  for (const char* doc : bad) CHECK_THROWS_AS(parse_model(doc), ValidationError);
}

TEST_CASE("suite reports are deterministic") {
  SweepConfig cfg;
  cfg.max_base = 2;
  cfg.random_formulas = 30;
  Report a = run_suite("filtering", cfg);
  Report b = run_suite("filtering", cfg);
  CHECK(a.pass);
  CHECK(a.instances == b.instances);
  nlohmann::json ja = a.to_json(), jb = b.to_json();
  ja.erase("duration_ms");
  jb.erase("duration_ms");
  CHECK(ja == jb);
  CHECK_THROWS_AS(run_suite("nonsense", cfg), Error);
}

TEST_SUITE_END();
