#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "algotrace/probing.hpp"
#include "algotrace/rng.hpp"

namespace algotrace {

/// Input distribution knobs. Defaults are the canonical dataset's values and
/// are echoed into every manifest.
struct SamplerKnobs {
  double er_edge_prob = 0.5;
  int alphabet_size = 4;
  double needle_fraction = 0.25;
  /// Share of segments_intersect instances forced to intersect.
  double intersect_fraction = 0.5;
};

struct SamplerConfig {
  std::string algorithm_id;
  int n = 16;
  std::uint64_t seed = 0;
  SamplerKnobs knobs;
};

/// Structural flags of the graph family an algorithm samples from.
struct GraphShape {
  bool directed = false;
  bool acyclic = false;
  bool weighted = false;
  bool has_source = false;
};

std::optional<GraphShape> graph_shape(std::string_view algorithm_id);

/// Smallest node count the algorithm's precondition admits.
int minimum_nodes(std::string_view algorithm_id);

/// segments_intersect always runs on its four endpoints; everything else keeps `requested`.
int effective_nodes(std::string_view algorithm_id, int requested);

/// Collinearity tolerance used when rejecting degenerate point sets.
inline constexpr double kCollinearTolerance = 1e-9;

/// Sample one input frame (every INPUT probe, in spec order). Deterministic in cfg.
Frame sample_inputs(const SamplerConfig& cfg);

struct SplitPlan {
  std::size_t count = 0;
  int n = 0;
};

struct SplitOverrides {
  std::optional<std::size_t> train_count;
  std::optional<std::size_t> val_count;
  std::optional<std::size_t> test_count;
  std::optional<int> train_nodes;  // also used for validation
  std::optional<int> test_nodes;
};

/// 1000 train / 32 val at n = 16, 32 test at n = 64; counts x64 when the
/// algorithm's output lives on the graph.
inline constexpr std::size_t kGraphOutputMultiplier = 64;
SplitPlan plan_split(std::string_view algorithm_id, Split split, const SplitOverrides& overrides = {});

/// Config of item `index` of a split: sub-seed derived from (seed, algorithm, split, index).
SamplerConfig split_item_config(std::string_view algorithm_id, Split split, std::uint64_t seed,
                                std::size_t index, const SplitPlan& plan, const SamplerKnobs& knobs);

std::vector<Frame> sample_split(std::string_view algorithm_id, Split split, std::uint64_t seed,
                                const SplitOverrides& overrides = {}, const SamplerKnobs& knobs = {});

}  // namespace algotrace
