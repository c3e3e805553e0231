#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "algotrace/probing.hpp"
#include "algotrace/rng.hpp"
#include "algotrace/samplers.hpp"

namespace algotrace {

inline constexpr std::uint32_t kFormatVersion = 1;
inline constexpr std::string_view kMagic = "ALGTRACE";

/// Header flag bits.
inline constexpr std::uint32_t kFlagScalarsF32 = 1u << 0;
inline constexpr std::uint32_t kFlagOutputsOnly = 1u << 1;

struct SplitHeader {
  std::uint32_t version = kFormatVersion;
  std::uint32_t flags = 0;
  AlgorithmSpec spec;
  std::uint64_t count = 0;
};

/// Record payload (without the u64 length prefix).
std::string encode_record(const Trajectory& traj, const AlgorithmSpec& spec, std::uint32_t flags);
Trajectory decode_record(std::string_view bytes, const AlgorithmSpec& spec, std::uint32_t flags,
                         std::uint64_t index);

/// Streaming writer. The record count in the header is patched on close().
class TrajWriter {
 public:
  TrajWriter(const std::filesystem::path& path, const AlgorithmSpec& spec, std::uint32_t flags = 0);
  TrajWriter(const TrajWriter&) = delete;
  TrajWriter& operator=(const TrajWriter&) = delete;
  ~TrajWriter();

  void append(const Trajectory& traj);
  /// Appends a payload produced by encode_record (lets callers encode in parallel).
  void append_encoded(std::string_view payload);
  /// Returns the total file size in bytes.
  std::uint64_t close();

  [[nodiscard]] std::uint64_t count() const { return count_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  AlgorithmSpec spec_;
  std::uint32_t flags_;
  std::uint64_t count_ = 0;
  std::streamoff count_offset_ = 0;
  bool closed_ = false;
};

/// Streaming reader. Header problems raise VersionMismatch or Parse; record
/// problems raise CorruptRecord naming the record index.
class TrajReader {
 public:
  explicit TrajReader(const std::filesystem::path& path);

  [[nodiscard]] const SplitHeader& header() const { return header_; }
  /// Index of the record the next call to next() returns.
  [[nodiscard]] std::uint64_t position() const { return index_; }

  std::optional<Trajectory> next();
  /// Raw payload of the next record; does not decode it.
  std::optional<std::string> next_payload();

 private:
  std::ifstream in_;
  SplitHeader header_;
  std::uint64_t index_ = 0;
};

void write_traj(const std::filesystem::path& path, const AlgorithmSpec& spec,
                std::span<const Trajectory> records, std::uint32_t flags = 0);
std::vector<Trajectory> read_traj(const std::filesystem::path& path,
                                  SplitHeader* header = nullptr);

// --- manifests --------------------------------------------------------------

struct SplitEntry {
  std::size_t count = 0;
  int n = 0;
  std::string file;
  std::string sha256;
  std::uint64_t bytes = 0;
};

struct Manifest {
  int format_version = static_cast<int>(kFormatVersion);
  std::string algorithm_id;
  std::string prng{kPrngName};
  std::uint64_t seed = 0;
  std::map<Split, SplitEntry> splits;
  SamplerKnobs knobs;
  std::string spec_sha256;
  std::string scalar_width = "f64";
};

nlohmann::json manifest_to_json(const Manifest& m);
Manifest manifest_from_json(const nlohmann::json& doc);
void write_manifest(const std::filesystem::path& dir, const Manifest& m);
/// Throws VersionMismatch for an unknown format_version.
Manifest read_manifest(const std::filesystem::path& dir);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);
/// Digest of the algorithm's entry in specs.json.
std::string spec_digest(std::string_view algorithm_id);

/// Writes `<dir>/<split>.traj` and records it in `manifest`.
void write_split(std::span<const Trajectory> records, const std::filesystem::path& dir, Split split,
                 Manifest& manifest, std::uint32_t flags = 0);

struct LoadedSplit {
  Manifest manifest;
  SplitHeader header;
  std::vector<Trajectory> records;
};

/// Reads one split and verifies digest (DigestMismatch) and count (CountMismatch).
LoadedSplit read_split(const std::filesystem::path& dir, Split split);

/// Writes `<root>/specs.json`.
void write_specs_json(const std::filesystem::path& root);

// --- batches ----------------------------------------------------------------

struct ProbeTensor {
  ProbeSpec spec;
  /// (B, size) for inputs and outputs, (B, T_max, size) for hints.
  std::vector<std::size_t> shape;
  Payload data;
};

struct Batch {
  std::string algorithm_id;
  int n = 0;
  std::size_t t_max = 0;
  std::vector<std::uint32_t> lengths;
  std::vector<std::uint64_t> seeds;
  /// B x T_max; 0 marks padding frames.
  std::vector<std::uint8_t> valid;
  std::vector<ProbeTensor> inputs, hints, outputs;

  [[nodiscard]] std::size_t size() const { return lengths.size(); }
};

/// Pads along the hint axis to the longest trajectory. Raises HeterogeneousBatch
/// for mixed algorithms or node counts.
Batch assemble_batch(std::span<const Trajectory> records);
std::vector<Trajectory> disassemble_batch(const Batch& batch);
/// Consecutive batches of at most `size` records.
std::vector<Batch> make_batches(std::span<const Trajectory> records, std::size_t size);

}  // namespace algotrace
