#include <doctest.h>

#include "bfclust/error.hpp"
#include "bfclust/instance.hpp"
#include "bfclust/report.hpp"

using namespace bfclust;
using nlohmann::json;

namespace {

json evidence_doc() {
  return json::parse(R"({
    "frame": ["x", "y"],
    "items": [
      {"id": "r1", "masses": [{"focal": ["x"], "mass": 0.6}, {"focal": ["x", "y"], "mass": 0.4}]},
      {"id": "r2", "masses": [{"focal": ["y"], "mass": 0.5}, {"focal": ["x", "y"], "mass": 0.5}]},
      {"id": "r3", "masses": [{"focal": ["x"], "mass": 1.0}]}
    ],
    "attraction": [{"i": "r1", "j": "r3", "p": 0.7}],
    "external_conflict": [{"i": 1, "j": 2, "c": 0.5}],
    "partition": [0, 1, 0]
  })");
}

json matrix_doc() {
  return json::parse(R"({
    "conflict": [[0, 0.2, 0.9], [0.2, 0, 0.4], [0.9, 0.4, 0]],
    "attraction": [{"i": 0, "j": 1, "p": 0.6}]
  })");
}

}  // namespace

TEST_CASE("evidence mode ingestion") {
  const auto inst = parse_instance(evidence_doc());
  CHECK(inst.evidence_mode());
  CHECK(inst.size() == 3);
  CHECK(inst.ids() == std::vector<std::string>{"r1", "r2", "r3"});
  const auto c = inst.internal_conflict();
  CHECK(c(0, 1) == doctest::Approx(0.3));
  CHECK(c(1, 2) == doctest::Approx(0.5));
  CHECK(inst.attraction(0, 2) == 0.7);
  CHECK(inst.merged_conflict()(1, 2) == doctest::Approx(0.75));
  REQUIRE(inst.partition);
  CHECK(inst.partition->labels() == std::vector<std::size_t>{0, 1, 0});
}

TEST_CASE("matrix mode ingestion") {
  const auto inst = parse_instance(matrix_doc());
  CHECK_FALSE(inst.evidence_mode());
  CHECK(inst.size() == 3);
  CHECK(inst.internal_conflict()(0, 2) == 0.9);
  CHECK(inst.attraction(1, 0) == 0.6);
  CHECK(inst.external_conflict.all_zero());
  CHECK_FALSE(inst.partition);
}

TEST_CASE("rejected instances") {
  auto expect_reject = [](json doc) { CHECK_THROWS_AS(parse_instance(doc), InputError); };
  {
    auto d = matrix_doc();
    d["conflict"][0][1] = 0.3;  // asymmetric
    expect_reject(d);
  }
  {
    auto d = matrix_doc();
    d["items"] = evidence_doc()["items"];  // both modes
    expect_reject(d);
  }
  expect_reject(json::object());
  {
    auto d = matrix_doc();
    d["attraction"].push_back({{"i", 1}, {"j", 0}, {"p", 0.1}});  // duplicate pair
    expect_reject(d);
  }
  {
    auto d = matrix_doc();
    d["attraction"] = json::array({{{"i", 0}, {"j", 7}, {"p", 0.1}}});
    expect_reject(d);
  }
  {
    auto d = matrix_doc();
    d["attraction"] = json::array({{{"i", 0}, {"j", 1}, {"p", 1.1}}});
    expect_reject(d);
  }
  {
    auto d = matrix_doc();
    d["attraction"] = json::array({{{"i", "a"}, {"j", 1}, {"p", 0.1}}});  // ids need evidence mode
    expect_reject(d);
  }
  {
    auto d = matrix_doc();
    d["partition"] = {0, 2, 2};  // gap
    expect_reject(d);
  }
  {
    auto d = matrix_doc();
    d["partition"] = {0, 1};  // wrong length
    expect_reject(d);
  }
  {
    auto d = matrix_doc();
    d["atraction"] = json::array();  // typo
    expect_reject(d);
  }
  {
    auto d = evidence_doc();
    d["items"][0]["masses"][0]["mass"] = 0.5;  // sums to 0.9
    expect_reject(d);
  }
  {
    auto d = evidence_doc();
    d["items"][1]["id"] = "r1";
    expect_reject(d);
  }
  {
    auto d = evidence_doc();
    d["items"][0]["masses"][0]["focal"] = {"z"};
    expect_reject(d);
  }
  {
    auto d = evidence_doc();
    d["items"][0]["masses"][0]["focal"] = json::array();
    expect_reject(d);
  }
  {
    auto d = evidence_doc();
    d["items"][0]["masses"] = "oops";
    expect_reject(d);
  }
  CHECK_THROWS_AS(load_instance("/nonexistent/instance.json"), InputError);
}

TEST_CASE("serialization round trip") {
  for (const auto& doc : {evidence_doc(), matrix_doc()}) {
    const auto inst = parse_instance(doc);
    const json out = to_json(inst);
    const auto again = parse_instance(out);
    CHECK(to_json(again) == out);
    CHECK(again.merged_conflict() == inst.merged_conflict());
    CHECK(again.attraction == inst.attraction);
  }
}

TEST_CASE("report formatting") {
  CHECK(number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(number(0.25) == 0.25);
  const auto text = to_text(json{{"a", 1}, {"b", {{"c", "x"}}}, {"d", json::array({json{{"e", 2}}})}});
  CHECK(text == "a: 1\nb:\n  c: x\nd:\n  [0]\n    e: 2\n");
}
