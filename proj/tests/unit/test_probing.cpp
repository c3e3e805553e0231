#include <doctest.h>

#include "../support.hpp"
#include "algotrace/probing.hpp"
#include "algotrace/spec_registry.hpp"

using namespace algotrace;
using testing::error_kind;
using Ints = std::vector<std::int32_t>;

namespace {

/// A complete minimum-style run over three nodes, used as a starting point.
TrajectoryBuilder filled_builder() {
  TrajectoryBuilder b(get_spec("minimum"), 3, 7);
  b.push(Stage::Input, "pos", positions(3));
  b.push(Stage::Input, "key", std::vector<double>{0.3, 0.1, 0.2});
  b.next_hint_frame();
  b.push(Stage::Hint, "min_h", one_hot(0, 3));
  b.push(Stage::Hint, "i", one_hot(0, 3));
  b.push(Stage::Output, "min", one_hot(1, 3));
  return b;
}

}  // namespace

TEST_SUITE("probing") {

TEST_CASE("value sizes follow the location") {
  CHECK(value_size(Location::Node, 5) == 5);
  CHECK(value_size(Location::Edge, 5) == 25);
  CHECK(value_size(Location::Graph, 5) == 1);
}

TEST_CASE("builder seals frames in spec order regardless of push order") {
  TrajectoryBuilder b(get_spec("minimum"), 2);
  b.push(Stage::Input, "key", std::vector<double>{0.5, 0.25});
  b.push(Stage::Input, "pos", positions(2));
  b.next_hint_frame();
  b.push(Stage::Hint, "i", one_hot(0, 2));
  b.push(Stage::Hint, "min_h", one_hot(0, 2));
  b.next_hint_frame();
  b.push(Stage::Hint, "i", one_hot(1, 2));
  b.push(Stage::Hint, "min_h", one_hot(1, 2));
  b.push(Stage::Output, "min", one_hot(1, 2));
  const Trajectory t = b.finalize();
  REQUIRE(t.inputs.size() == 2);
  CHECK(t.inputs[0].name == "pos");
  CHECK(t.inputs[1].name == "key");
  REQUIRE(t.length() == 2);
  CHECK(t.hints[1][0].name == "min_h");
  CHECK(t.hint(1, "i").ints() == Ints{0, 1});
  CHECK(check_against_spec(t, get_spec("minimum")).empty());
}

TEST_CASE("builder rejects malformed pushes") {
  TrajectoryBuilder b(get_spec("minimum"), 3);
  CHECK(error_kind([&] { b.push(Stage::Input, "nope", positions(3)); }) == ErrorKind::UnknownProbe);
  // Right name, wrong stage.
  CHECK(error_kind([&] { b.push(Stage::Output, "key", positions(3)); }) == ErrorKind::UnknownProbe);
  CHECK(error_kind([&] { b.push(Stage::Input, "key", positions(2)); }) == ErrorKind::ShapeMismatch);
  CHECK(error_kind([&] { b.push(Stage::Input, "key", Ints{0, 1, 2}); }) == ErrorKind::ShapeMismatch);
  CHECK(error_kind([&] { b.push(Stage::Hint, "i", one_hot(0, 3)); }) == ErrorKind::IncompleteFrame);
  b.next_hint_frame();
  CHECK(error_kind([&] { b.push(Stage::Hint, "i", Ints{1, 1, 0}); }) == ErrorKind::RangeViolation);
  CHECK(error_kind([&] { b.push(Stage::Hint, "i", Ints{0, 0, 0}); }) == ErrorKind::RangeViolation);
  b.push(Stage::Hint, "i", one_hot(2, 3));
  CHECK(error_kind([&] { b.push(Stage::Hint, "i", one_hot(1, 3)); }) == ErrorKind::DuplicateInFrame);
  // min_h is still missing.
  CHECK(error_kind([&] { b.next_hint_frame(); }) == ErrorKind::IncompleteFrame);
}

TEST_CASE("range checks per probe type") {
  const ProbeSpec pointer{"p", Stage::Output, Location::Node, {ProbeKind::Pointer, 0}};
  CHECK_FALSE(check_payload(pointer, 3, Ints{0, 2, 1}).has_value());
  CHECK(check_payload(pointer, 3, Ints{0, 3, 1})->kind == ErrorKind::RangeViolation);
  CHECK(check_payload(pointer, 3, Ints{-1, 0, 1})->kind == ErrorKind::RangeViolation);
  const ProbeSpec cat{"c", Stage::Hint, Location::Node, {ProbeKind::Categorical, 3}};
  CHECK_FALSE(check_payload(cat, 2, Ints{2, 0}).has_value());
  CHECK(check_payload(cat, 2, Ints{3, 0})->kind == ErrorKind::RangeViolation);
  const ProbeSpec mask{"m", Stage::Hint, Location::Edge, {ProbeKind::Mask, 0}};
  CHECK(check_payload(mask, 2, Ints{0, 1, 1, 2})->kind == ErrorKind::RangeViolation);
  const ProbeSpec scalar{"s", Stage::Hint, Location::Graph, {ProbeKind::Scalar, 0}};
  CHECK(check_payload(scalar, 4, std::vector<double>{std::nan("")})->kind ==
        ErrorKind::RangeViolation);
}

TEST_CASE("finalize checks completeness and consumes the builder") {
  SUBCASE("happy path, then a second finalize") {
    TrajectoryBuilder b = filled_builder();
    const Trajectory t = b.finalize();
    CHECK(t.seed == 7);
    CHECK(t.length() == 1);
    CHECK(error_kind([&] { b.finalize(); }) == ErrorKind::BuilderConsumed);
    CHECK(error_kind([&] { b.next_hint_frame(); }) == ErrorKind::BuilderConsumed);
  }
  SUBCASE("no hint frames") {
    TrajectoryBuilder b(get_spec("minimum"), 1);
    b.push(Stage::Input, "pos", positions(1));
    b.push(Stage::Input, "key", std::vector<double>{0.5});
    b.push(Stage::Output, "min", one_hot(0, 1));
    CHECK(error_kind([&] { b.finalize(); }) == ErrorKind::IncompleteFrame);
  }
  SUBCASE("missing output") {
    TrajectoryBuilder b(get_spec("minimum"), 1);
    b.push(Stage::Input, "pos", positions(1));
    b.push(Stage::Input, "key", std::vector<double>{0.5});
    b.next_hint_frame();
    b.push(Stage::Hint, "min_h", one_hot(0, 1));
    b.push(Stage::Hint, "i", one_hot(0, 1));
    CHECK(error_kind([&] { b.finalize(); }) == ErrorKind::MissingProbe);
  }
  SUBCASE("zero nodes") {
    CHECK(error_kind([] { TrajectoryBuilder(get_spec("minimum"), 0); }) == ErrorKind::EmptyInput);
  }
}

TEST_CASE("check_against_spec reports tampering") {
  Trajectory t = filled_builder().finalize();
  const auto& spec = get_spec("minimum");
  REQUIRE(check_against_spec(t, spec).empty());

  Trajectory extra = t;
  extra.outputs.push_back({"bogus", Ints{0, 0, 0}});
  CHECK_FALSE(check_against_spec(extra, spec).empty());

  Trajectory two_hot = t;
  two_hot.outputs[0].data = Ints{1, 1, 0};
  CHECK_FALSE(check_against_spec(two_hot, spec).empty());

  Trajectory no_hints = t;
  no_hints.hints.clear();
  CHECK_FALSE(check_against_spec(no_hints, spec).empty());

  Trajectory wrong_spec = t;
  CHECK_FALSE(check_against_spec(wrong_spec, get_spec("bubble_sort")).empty());
}

TEST_CASE("chain pointers encode an ordering") {
  const std::vector<int> order{2, 0, 1};
  CHECK(chain_pointers(order, 3) == Ints{2, 0, 2});
  CHECK(identity_pointers(3) == Ints{0, 1, 2});
  CHECK(one_hot(1, 3) == Ints{0, 1, 0});
}

}  // TEST_SUITE
