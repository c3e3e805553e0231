#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "algotrace/probing.hpp"

namespace algotrace {

/// Sequence-structured instance; each list element is a node. Greedy tasks use
/// the auxiliary arrays instead of `key`.
struct SeqInstance {
  std::vector<double> key;
  std::vector<double> start, finish;      // activity selection
  std::vector<double> deadline, weight;   // task scheduling
  std::optional<double> target;           // binary search
  std::uint64_t seed = 0;
};

enum class SortKind { Insertion, Bubble, Heap, Quick };
enum class SearchKind { Minimum, BinarySearch, Quickselect };
enum class GreedyKind { ActivitySelection, TaskScheduling };

Trajectory sort_trajectory(SortKind kind, const SeqInstance& instance);
Trajectory search_trajectory(SearchKind kind, const SeqInstance& instance);
/// Keys are used as given; samplers store them already recentred by -0.5.
Trajectory max_subarray_trajectory(const SeqInstance& instance);
Trajectory greedy_trajectory(GreedyKind kind, const SeqInstance& instance);

/// Order statistic selected by quickselect (0-based).
constexpr int quickselect_rank(int n) { return n / 2; }

}  // namespace algotrace
