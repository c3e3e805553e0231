#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace algotrace {

enum class Stage : std::uint8_t { Input, Output, Hint };
enum class Location : std::uint8_t { Node, Edge, Graph };
enum class ProbeKind : std::uint8_t { Scalar, Categorical, Mask, MaskOne, Pointer };

enum class Family : std::uint8_t {
  Sorting,
  Searching,
  DivideAndConquer,
  Greedy,
  DynamicProgramming,
  Graphs,
  Strings,
  Geometry,
};

/// A probe type. `num_classes` is only meaningful for categorical probes and is
/// fixed when the spec is written, never inferred from data.
struct ProbeType {
  ProbeKind kind = ProbeKind::Scalar;
  int num_classes = 0;

  friend bool operator==(const ProbeType&, const ProbeType&) = default;
};

struct ProbeSpec {
  std::string name;
  Stage stage = Stage::Input;
  Location location = Location::Node;
  ProbeType type;

  friend bool operator==(const ProbeSpec&, const ProbeSpec&) = default;
};

/// Static description of every feature an algorithm emits.
struct AlgorithmSpec {
  std::string algorithm_id;
  Family family = Family::Sorting;
  std::vector<ProbeSpec> probes;

  [[nodiscard]] const ProbeSpec* find(std::string_view name) const;
  [[nodiscard]] std::vector<const ProbeSpec*> of_stage(Stage stage) const;
  /// True when some OUTPUT probe lives on the graph location.
  [[nodiscard]] bool has_graph_output() const;

  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

/// Number of entries a probe value holds for a trajectory over `n` nodes.
std::size_t value_size(Location location, int n);

std::string_view to_string(Stage stage);
std::string_view to_string(Location location);
std::string_view to_string(ProbeKind kind);
std::string_view to_string(Family family);

Stage stage_from_string(std::string_view text);
Location location_from_string(std::string_view text);
ProbeKind probe_kind_from_string(std::string_view text);
Family family_from_string(std::string_view text);

}  // namespace algotrace
