#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "algotrace/probe.hpp"

namespace algotrace {

/// Identifiers of the thirty algorithms, in registry order.
std::span<const std::string_view> algorithm_ids();

/// Immutable spec for `algorithm_id`; throws Error(UnknownAlgorithm) otherwise.
const AlgorithmSpec& get_spec(std::string_view algorithm_id);

/// All registry specs, in the same order as algorithm_ids().
const std::vector<AlgorithmSpec>& all_specs();

/// Free-text conventions attached to a registry entry (empty if none).
std::string_view spec_notes(std::string_view algorithm_id);

/// Structural violations of a spec; empty iff the spec is well-formed.
std::vector<std::string> validate_spec(const AlgorithmSpec& spec);

nlohmann::json spec_to_json(const AlgorithmSpec& spec);
AlgorithmSpec spec_from_json(const nlohmann::json& doc);

/// The `specs.json` document: every probe of every algorithm plus notes.
nlohmann::json export_specs();

}  // namespace algotrace
