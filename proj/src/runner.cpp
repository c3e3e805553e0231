#include "algotrace/runner.hpp"

#include <string>

#include "algotrace/algorithms/dp_strings_geometry.hpp"
#include "algotrace/algorithms/graph.hpp"
#include "algotrace/algorithms/sequence.hpp"
#include "algotrace/spec_registry.hpp"

namespace algotrace {
namespace {

const std::vector<double>& reals(const Frame& f, std::string_view name) {
  return value_of(f, name).scalars();
}
const std::vector<std::int32_t>& ints(const Frame& f, std::string_view name) {
  return value_of(f, name).ints();
}

int node_count(const Frame& inputs) { return static_cast<int>(reals(inputs, "pos").size()); }

int marked_node(const std::vector<std::int32_t>& one_hot) {
  int found = -1;
  for (std::size_t i = 0; i < one_hot.size(); ++i) {
    if (one_hot[i] == 0) continue;
    if (found >= 0) throw Error(ErrorKind::PreconditionViolated, "more than one source marked");
    found = static_cast<int>(i);
  }
  return found;
}

/// Splits a two-string layout at the first node whose membership flag is set,
/// checking that the flags and the chain pointers match the contiguous layout.
std::pair<std::vector<std::int32_t>, std::vector<std::int32_t>> split_strings(
    const Frame& inputs, std::string_view membership) {
  const auto& ch = ints(inputs, "ch");
  const auto& member = ints(inputs, membership);
  const auto& pred = ints(inputs, "str_pred");
  const int n = static_cast<int>(ch.size());
  if (member.size() != ch.size() || pred.size() != ch.size()) {
    throw Error(ErrorKind::ShapeMismatch, "string inputs disagree in length");
  }
  int first = 0;
  while (first < n && member[first] == 0) ++first;
  for (int i = 0; i < n; ++i) {
    const bool ok_member = (member[i] != 0) == (i >= first);
    const int expected = (i == 0 || i == first) ? i : i - 1;
    if (!ok_member || pred[i] != expected) {
      throw Error(ErrorKind::PreconditionViolated,
                  "string nodes must be laid out as two contiguous chains");
    }
  }
  return {{ch.begin(), ch.begin() + first}, {ch.begin() + first, ch.end()}};
}

}  // namespace

Trajectory run_algorithm(std::string_view id, const Frame& inputs, std::uint64_t seed) {
  const AlgorithmSpec& spec = get_spec(id);
  const int n = node_count(inputs);

  if (spec.family == Family::Graphs) {
    GraphInstance g{n, ints(inputs, "adj"), {}, -1, seed};
    if (const auto* w = find_value(inputs, "w")) g.w = w->scalars();
    if (const auto* s = find_value(inputs, "s")) g.source = marked_node(s->ints());
    return graph_trajectory(graph_algorithm(id), g);
  }

  SeqInstance seq;
  seq.seed = seed;
  if (id == "insertion_sort" || id == "bubble_sort" || id == "heapsort" || id == "quicksort") {
    seq.key = reals(inputs, "key");
    const SortKind kind = id == "insertion_sort" ? SortKind::Insertion
                          : id == "bubble_sort"  ? SortKind::Bubble
                          : id == "heapsort"     ? SortKind::Heap
                                                 : SortKind::Quick;
    return sort_trajectory(kind, seq);
  }
  if (id == "minimum" || id == "binary_search" || id == "quickselect") {
    seq.key = reals(inputs, "key");
    if (const auto* t = find_value(inputs, "target")) seq.target = t->scalars().at(0);
    const SearchKind kind = id == "minimum"         ? SearchKind::Minimum
                            : id == "binary_search" ? SearchKind::BinarySearch
                                                    : SearchKind::Quickselect;
    return search_trajectory(kind, seq);
  }
  if (id == "find_maximum_subarray") {
    seq.key = reals(inputs, "key");
    return max_subarray_trajectory(seq);
  }
  if (id == "activity_selection") {
    seq.start = reals(inputs, "s");
    seq.finish = reals(inputs, "f");
    return greedy_trajectory(GreedyKind::ActivitySelection, seq);
  }
  if (id == "task_scheduling") {
    seq.deadline = reals(inputs, "d");
    seq.weight = reals(inputs, "w");
    return greedy_trajectory(GreedyKind::TaskScheduling, seq);
  }
  if (id == "matrix_chain_order") return matrix_chain_trajectory({reals(inputs, "p"), seed});
  if (id == "lcs_length") {
    auto [x, y] = split_strings(inputs, "in_second");
    return lcs_trajectory({std::move(x), std::move(y), seed});
  }
  if (id == "optimal_bst") {
    auto p = reals(inputs, "p");
    if (p.empty() || p.back() != 0.0) {
      throw Error(ErrorKind::PreconditionViolated, "optimal_bst expects a trailing p = 0 node");
    }
    p.pop_back();
    return optimal_bst_trajectory({std::move(p), reals(inputs, "q"), seed});
  }
  if (id == "naive_string_matcher" || id == "kmp_matcher") {
    auto [hay, needle] = split_strings(inputs, "in_needle");
    const auto kind = id == "kmp_matcher" ? MatcherKind::Kmp : MatcherKind::Naive;
    return matcher_trajectory(kind, {std::move(hay), std::move(needle), seed});
  }
  PointInstance pts{reals(inputs, "x"), reals(inputs, "y"), seed};
  if (id == "segments_intersect") return segments_trajectory(pts);
  if (id == "graham_scan") return hull_trajectory(HullKind::Graham, pts);
  if (id == "jarvis_march") return hull_trajectory(HullKind::Jarvis, pts);
  throw Error(ErrorKind::UnknownAlgorithm, std::string(id));
}

Trajectory generate_trajectory(const SamplerConfig& cfg) {
  return run_algorithm(cfg.algorithm_id, sample_inputs(cfg), cfg.seed);
}

}  // namespace algotrace
