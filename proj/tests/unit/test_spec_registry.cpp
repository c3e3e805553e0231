#include <doctest.h>

#include <fstream>
#include <set>

#include "../support.hpp"
#include "algotrace/spec_registry.hpp"

using namespace algotrace;
using testing::error_kind;

TEST_SUITE("spec_registry") {

TEST_CASE("thirty algorithms over eight families, each well formed") {
  REQUIRE(algorithm_ids().size() == 30);
  REQUIRE(all_specs().size() == 30);
  std::set<Family> families;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < all_specs().size(); ++i) {
    const AlgorithmSpec& spec = all_specs()[i];
    CAPTURE(spec.algorithm_id);
    CHECK(spec.algorithm_id == algorithm_ids()[i]);
    CHECK(validate_spec(spec).empty());
    CHECK(&get_spec(spec.algorithm_id) == &spec);
    CHECK_FALSE(spec_notes(spec.algorithm_id).empty());
    families.insert(spec.family);
    ids.insert(spec.algorithm_id);
  }
  CHECK(families.size() == 8);
  CHECK(ids.size() == 30);
}

TEST_CASE("every algorithm exposes a hint stage and an output stage") {
  for (const auto& spec : all_specs()) {
    CAPTURE(spec.algorithm_id);
    CHECK_FALSE(spec.of_stage(Stage::Hint).empty());
    CHECK_FALSE(spec.of_stage(Stage::Output).empty());
  }
}

TEST_CASE("only segments_intersect has a graph-level output") {
  for (const auto& spec : all_specs()) {
    CAPTURE(spec.algorithm_id);
    CHECK(spec.has_graph_output() == (spec.algorithm_id == "segments_intersect"));
  }
}

TEST_CASE("categorical class counts are fixed in the spec") {
  CHECK(get_spec("lcs_length").find("ch")->type.num_classes == 4);
  CHECK(get_spec("lcs_length").find("b")->type.num_classes == 3);
  CHECK(get_spec("dfs").find("color")->type.num_classes == 3);
  CHECK(get_spec("heapsort").find("phase")->type.num_classes == 2);
}

TEST_CASE("unknown ids raise UnknownAlgorithm") {
  CHECK(error_kind([] { get_spec("bogo_sort"); }) == ErrorKind::UnknownAlgorithm);
}

TEST_CASE("validate_spec flags structural problems") {
  AlgorithmSpec spec = get_spec("minimum");
  spec.probes.push_back(spec.probes.front());
  CHECK_FALSE(validate_spec(spec).empty());

  AlgorithmSpec scalar_out = get_spec("minimum");
  scalar_out.probes.push_back({"score", Stage::Output, Location::Graph, {ProbeKind::Scalar, 0}});
  CHECK_FALSE(validate_spec(scalar_out).empty());

  AlgorithmSpec one_class = get_spec("dfs");
  for (auto& p : one_class.probes) {
    if (p.name == "color") p.type.num_classes = 1;
  }
  CHECK_FALSE(validate_spec(one_class).empty());

  AlgorithmSpec no_pos = get_spec("minimum");
  no_pos.probes.erase(no_pos.probes.begin());
  CHECK_FALSE(validate_spec(no_pos).empty());
}

TEST_CASE("json round trip preserves every spec") {
  for (const auto& spec : all_specs()) {
    CAPTURE(spec.algorithm_id);
    CHECK(spec_from_json(spec_to_json(spec)) == spec);
  }
  CHECK(error_kind([] { spec_from_json(nlohmann::json{{"algorithm_id", 3}}); }) ==
        ErrorKind::Parse);
}

TEST_CASE("checked-in docs/specs.json matches the registry") {
  std::ifstream in(std::string(ALGOTRACE_SOURCE_DIR) + "/docs/specs.json");
  REQUIRE(in.good());
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc == export_specs());
  CHECK(doc.at("algorithms").size() == 30);
}

}  // TEST_SUITE
