#include <doctest.h>

#include "premod/builtin.hpp"
#include "premod/error.hpp"
#include "premod/io.hpp"

using namespace premod;
using nlohmann::json;

TEST_CASE("category files round-trip") {
  for (const auto& [name, p] : builtin_catalog()) {
    INFO(name);
    const json j = category_to_json(p);
    CHECK(j["format"] == 1);
    const auto q = category_from_json(parse_json(j.dump()));
    CHECK(verify_premodular(q).all_passed());
    const auto e = equivalence(p, q, 1e-12);
    REQUIRE(e.has_value());
    for (Label a = 0; a < p.size(); ++a) CHECK((*e)[a] == a);
  }
}

TEST_CASE("minimal category files fill in dims and S'") {
  const json j = json::parse(R"({
    "format": 1,
    "labels": ["1", "tau"],
    "unit": "1",
    "dual": {"1": "1", "tau": "tau"},
    "N": [["1","1","1",1], ["1","tau","tau",1], ["tau","1","tau",1], ["tau","tau","1",1], ["tau","tau","tau",1]],
    "theta": {"1": {"rational": [0, 1]}, "tau": {"complex": [-0.8090169943749475, 0.5877852522924731]}}
  })");
  const auto p = category_from_json(j);
  CHECK(p.dims[1] == doctest::Approx((1 + std::sqrt(5.0)) / 2));
  CHECK(std::abs(p.sprime(1, 1) + 1.0) < 1e-12);
  CHECK(equivalence(p, fibonacci(), 1e-12).has_value());
  CHECK_FALSE(p.theta[1].exact().has_value());
  CHECK(p.theta[0].exact().has_value());
}

TEST_CASE("format versions and malformed documents") {
  json j = category_to_json(su2(2));
  j["format"] = 2;
  CHECK_THROWS_AS(category_from_json(j), ParseError);
  j.erase("format");
  CHECK_THROWS_AS(category_from_json(j), ParseError);
  j = category_to_json(su2(2));
  j["N"].push_back({"0", "7", "0", 1});
  CHECK_THROWS_AS(category_from_json(j), StructuralError);
  j = category_to_json(su2(2));
  j["sprime"].erase(0);
  CHECK_THROWS_AS(category_from_json(j), ParseError);
  j = category_to_json(su2(2));
  j["theta"]["1"] = {{"polar", 1}};
  CHECK_THROWS_AS(category_from_json(j), ParseError);
  CHECK_THROWS_AS(parse_json("{ not json"), ParseError);
  CHECK_THROWS_AS(read_file("/nonexistent/category.json"), ParseError);
}

TEST_CASE("a supplied S' is cross-checked by verification") {
  json j = category_to_json(fibonacci());
  j["sprime"][1][1] = {1.0, 0.0};
  const auto p = category_from_json(j);
  CHECK_FALSE(verify_premodular(p).all_passed());
}

TEST_CASE("plumbing files") {
  const auto g = PlumbingGraph::e8();
  const auto h = plumbing_from_json(plumbing_to_json(g));
  CHECK(h.size() == 8);
  CHECK(linking_matrix(h) == linking_matrix(g));
  const auto bare = plumbing_from_json(json::parse(
      R"({"vertices": [{"id": "v1", "framing": -2}, {"id": "v2", "framing": 3}], "edges": [["v1","v2"]]})"));
  CHECK(bare.size() == 2);
  CHECK_THROWS_AS(plumbing_from_json(json::parse(R"({"format": 7, "vertices": []})")), ParseError);
  CHECK_THROWS_AS(plumbing_from_json(json::parse(R"({"vertices": [{"id": "a"}]})")), ParseError);
}

TEST_CASE("FNV-1a reference vectors") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("condensed files carry provenance and re-verify") {
  const auto s4 = su2(4);
  const auto c = condense(restrict_data(s4, full_subcategory(s4.fusion, {0, 2, 4})));
  const json j = condensed_to_json(c, fnv1a_hex("su2(4)"));
  const json& prov = j["provenance"];
  CHECK(prov["group_order"] == 2);
  CHECK(prov["resolution_status"] == "unique");
  CHECK(prov["orbit_map"]["4"] == "0");
  CHECK(prov["source_hash"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  const auto back = category_from_json(parse_json(j.dump()));
  CHECK(verify_premodular(back).all_passed());
  CHECK(is_modular(back).relations_hold);
  CHECK(equivalence(back, pointed_cyclic(3, 2)).has_value());
}
