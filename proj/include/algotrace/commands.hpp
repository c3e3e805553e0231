#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "algotrace/probing.hpp"
#include "algotrace/samplers.hpp"

namespace algotrace {

// --- generate -----------------------------------------------------------------

struct GenerateOptions {
  std::vector<std::string> algorithms;  // empty means all
  std::filesystem::path out;
  std::uint64_t seed = 0;
  SplitOverrides overrides;
  SamplerKnobs knobs;
  unsigned jobs = 1;
  bool f32_scalars = false;
};

struct GenerateSummary {
  std::string algorithm_id;
  std::size_t records = 0;
  std::uint64_t bytes = 0;
  std::size_t violations = 0;
};

/// Samples, runs, spec-checks and writes every selected algorithm. Output is
/// byte-identical for equal options regardless of `jobs`. `log` may be null.
std::vector<GenerateSummary> generate_dataset(const GenerateOptions& options, std::ostream* log);

/// Expands `all` and checks every id; throws UnknownAlgorithm.
std::vector<std::string> resolve_algorithms(const std::vector<std::string>& requested);

// --- validate -----------------------------------------------------------------

struct Violation {
  std::string algorithm_id;
  std::string split;        // empty for dataset-level problems
  std::int64_t record = -1; // -1 for file-level problems
  std::vector<std::string> messages;
};

struct ValidateReport {
  std::size_t records_checked = 0;
  std::vector<Violation> violations;
  /// Files whose content digest disagrees with the manifest.
  std::vector<std::string> digest_mismatches;

  [[nodiscard]] bool clean() const { return violations.empty(); }
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Validates a dataset root (one directory per algorithm) or a single
/// algorithm directory: manifest digests and counts, spec conformance of every
/// record, and a bit-exact replay of every record from its derived seed.
/// A record yields at most one violation entry, holding every message for it.
ValidateReport validate_dataset(const std::filesystem::path& path, unsigned jobs = 1);

// --- inspect ------------------------------------------------------------------

/// Text rendering of a trajectory; pointers print as `i→j` and pointer
/// chains additionally as the list they encode.
std::string render_trajectory(const Trajectory& traj);

/// Reads record `index` of a .traj file; throws IndexOutOfRange past the end.
Trajectory read_record(const std::filesystem::path& file, std::uint64_t index);

// --- stats --------------------------------------------------------------------

struct SplitStats {
  std::string algorithm_id;
  std::string split;
  std::size_t count = 0;
  int n = 0;
  std::uint64_t bytes = 0;
  std::size_t min_length = 0, max_length = 0;
  double mean_length = 0.0;
};

std::vector<SplitStats> dataset_stats(const std::filesystem::path& root);
void print_stats(std::ostream& out, const std::vector<SplitStats>& stats);

/// Algorithm directories below `path` (or `path` itself if it holds a manifest).
std::vector<std::filesystem::path> algorithm_dirs(const std::filesystem::path& path);

}  // namespace algotrace
