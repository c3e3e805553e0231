#include "algotrace/probe.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "algotrace/error.hpp"

namespace algotrace {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownAlgorithm: return "UnknownAlgorithm";
    case ErrorKind::UnknownProbe: return "UnknownProbe";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::RangeViolation: return "RangeViolation";
    case ErrorKind::DuplicateInFrame: return "DuplicateInFrame";
    case ErrorKind::IncompleteFrame: return "IncompleteFrame";
    case ErrorKind::MissingProbe: return "MissingProbe";
    case ErrorKind::BuilderConsumed: return "BuilderConsumed";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorKind::DigestMismatch: return "DigestMismatch";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::CorruptRecord: return "CorruptRecord";
    case ErrorKind::HeterogeneousBatch: return "HeterogeneousBatch";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::SingleModel: return "SingleModel";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

const ProbeSpec* AlgorithmSpec::find(std::string_view name) const {
  auto it = std::find_if(probes.begin(), probes.end(),
                         [&](const ProbeSpec& p) { return p.name == name; });
  return it == probes.end() ? nullptr : &*it;
}

std::vector<const ProbeSpec*> AlgorithmSpec::of_stage(Stage stage) const {
  std::vector<const ProbeSpec*> out;
  for (const auto& p : probes) {
    if (p.stage == stage) out.push_back(&p);
  }
  return out;
}

bool AlgorithmSpec::has_graph_output() const {
  return std::any_of(probes.begin(), probes.end(), [](const ProbeSpec& p) {
    return p.stage == Stage::Output && p.location == Location::Graph;
  });
}

std::size_t value_size(Location location, int n) {
  const auto nodes = static_cast<std::size_t>(n);
  switch (location) {
    case Location::Node: return nodes;
    case Location::Edge: return nodes * nodes;
    case Location::Graph: return 1;
  }
  return 0;
}

namespace {

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<std::pair<std::string_view, Enum>, N>& table,
                std::string_view what) {
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  throw Error(ErrorKind::Parse, "unknown " + std::string(what) + " '" + std::string(text) + "'");
}

constexpr std::array<std::pair<std::string_view, Stage>, 3> kStages{{
    {"input", Stage::Input},
    {"output", Stage::Output},
    {"hint", Stage::Hint},
}};

constexpr std::array<std::pair<std::string_view, Location>, 3> kLocations{{
    {"node", Location::Node},
    {"edge", Location::Edge},
    {"graph", Location::Graph},
}};

constexpr std::array<std::pair<std::string_view, ProbeKind>, 5> kKinds{{
    {"scalar", ProbeKind::Scalar},
    {"categorical", ProbeKind::Categorical},
    {"mask", ProbeKind::Mask},
    {"mask_one", ProbeKind::MaskOne},
    {"pointer", ProbeKind::Pointer},
}};

constexpr std::array<std::pair<std::string_view, Family>, 8> kFamilies{{
    {"sorting", Family::Sorting},
    {"searching", Family::Searching},
    {"divide_and_conquer", Family::DivideAndConquer},
    {"greedy", Family::Greedy},
    {"dynamic_programming", Family::DynamicProgramming},
    {"graphs", Family::Graphs},
    {"strings", Family::Strings},
    {"geometry", Family::Geometry},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(Enum value, const std::array<std::pair<std::string_view, Enum>, N>& table) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

}  // namespace

std::string_view to_string(Stage stage) { return name_of(stage, kStages); }
std::string_view to_string(Location location) { return name_of(location, kLocations); }
std::string_view to_string(ProbeKind kind) { return name_of(kind, kKinds); }
std::string_view to_string(Family family) { return name_of(family, kFamilies); }

Stage stage_from_string(std::string_view text) { return parse_enum(text, kStages, "stage"); }
Location location_from_string(std::string_view text) {
  return parse_enum(text, kLocations, "location");
}
ProbeKind probe_kind_from_string(std::string_view text) {
  return parse_enum(text, kKinds, "probe type");
}
Family family_from_string(std::string_view text) { return parse_enum(text, kFamilies, "family"); }

}  // namespace algotrace
