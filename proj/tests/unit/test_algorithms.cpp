#include <doctest.h>

#include "../oracles/oracles.hpp"
#include "../support.hpp"
#include "algotrace/algorithms/dp_strings_geometry.hpp"
#include "algotrace/algorithms/graph.hpp"
#include "algotrace/algorithms/sequence.hpp"
#include "algotrace/spec_registry.hpp"

using namespace algotrace;
using testing::error_kind;
using Ints = std::vector<std::int32_t>;

namespace {

int marked(const Ints& mask) {
  return static_cast<int>(std::find(mask.begin(), mask.end(), 1) - mask.begin());
}

/// Keys in list order, following a predecessor chain.
std::vector<double> list_state(const Ints& pred, const std::vector<double>& key) {
  std::vector<double> out;
  for (int node : oracle::walk_chain(pred)) out.push_back(key[node]);
  return out;
}

SeqInstance keys(std::vector<double> k) {
  SeqInstance s;
  s.key = std::move(k);
  return s;
}

}  // namespace

TEST_SUITE("algorithms") {

TEST_CASE("insertion sort of [5,2,4,3,1] reproduces the worked example") {
  const std::vector<double> key{5, 2, 4, 3, 1};
  const Trajectory t = sort_trajectory(SortKind::Insertion, keys(key));
  REQUIRE(t.length() == 5);
  const std::vector<Ints> pred{
      {0, 0, 1, 2, 3}, {1, 1, 0, 2, 3}, {2, 1, 1, 0, 3}, {2, 1, 3, 1, 0}, {2, 4, 3, 1, 4}};
  const std::vector<std::vector<double>> lists{
      {5, 2, 4, 3, 1}, {2, 5, 4, 3, 1}, {2, 4, 5, 3, 1}, {2, 3, 4, 5, 1}, {1, 2, 3, 4, 5}};
  const std::vector<int> slot{0, 0, 0, 2, 1};
  for (std::size_t k = 0; k < 5; ++k) {
    CAPTURE(k);
    CHECK(t.hint(k, "pred_h").ints() == pred[k]);
    CHECK(list_state(t.hint(k, "pred_h").ints(), key) == lists[k]);
    CHECK(marked(t.hint(k, "iter").ints()) == static_cast<int>(k));
    CHECK(marked(t.hint(k, "slot").ints()) == slot[k]);
  }
  CHECK(t.output("pred").ints() == pred.back());
}

TEST_CASE("sorting trajectory lengths and shared outputs") {
  const auto key = std::vector<double>{0.9, 0.1, 0.5, 0.3, 0.7, 0.2};
  const Trajectory bubble = sort_trajectory(SortKind::Bubble, keys(key));
  CHECK(bubble.length() == 1 + 6 * 5 / 2);
  const Ints expected = oracle::chain(oracle::stable_order(key));
  for (auto kind : {SortKind::Insertion, SortKind::Bubble, SortKind::Heap, SortKind::Quick}) {
    CHECK(sort_trajectory(kind, keys(key)).output("pred").ints() == expected);
  }
}

TEST_CASE("equal keys keep their original order") {
  const auto key = std::vector<double>{0.5, 0.5, 0.1, 0.5};
  const Ints expected = oracle::chain({2, 0, 1, 3});
  for (auto kind : {SortKind::Insertion, SortKind::Bubble, SortKind::Heap, SortKind::Quick}) {
    CHECK(sort_trajectory(kind, keys(key)).output("pred").ints() == expected);
  }
}

TEST_CASE("searching") {
  const Trajectory m = search_trajectory(SearchKind::Minimum, keys({0.4, 0.2, 0.9, 0.2}));
  CHECK(marked(m.output("min").ints()) == 1);
  CHECK(m.length() == 4);

  SeqInstance sorted = keys({0.1, 0.3, 0.5, 0.7});
  sorted.target = 0.55;
  CHECK(marked(search_trajectory(SearchKind::BinarySearch, sorted).output("result").ints()) == 2);
  sorted.target = 0.05;
  CHECK(marked(search_trajectory(SearchKind::BinarySearch, sorted).output("result").ints()) == 0);

  SeqInstance unsorted = keys({0.3, 0.1});
  unsorted.target = 0.2;
  CHECK(error_kind([&] { search_trajectory(SearchKind::BinarySearch, unsorted); }) ==
        ErrorKind::PreconditionViolated);
  CHECK(error_kind([&] { search_trajectory(SearchKind::BinarySearch, keys({0.1, 0.2})); }) ==
        ErrorKind::PreconditionViolated);

  // k = floor(5/2) = 2: the third smallest.
  const Trajectory q = search_trajectory(SearchKind::Quickselect, keys({0.5, 0.1, 0.4, 0.3, 0.2}));
  CHECK(marked(q.output("median").ints()) == 3);
  CHECK(quickselect_rank(8) == 4);
}

TEST_CASE("maximum subarray") {
  const Trajectory t = max_subarray_trajectory(keys({-0.2, 0.3, -0.1, 0.4, -0.5}));
  CHECK(marked(t.output("start").ints()) == 1);
  CHECK(marked(t.output("end").ints()) == 3);
  const Trajectory neg = max_subarray_trajectory(keys({-0.3, -0.1, -0.2}));
  CHECK(marked(neg.output("start").ints()) == 1);
  CHECK(marked(neg.output("end").ints()) == 1);
}

TEST_CASE("greedy") {
  SeqInstance acts;
  acts.start = {0.0, 0.1, 0.3, 0.5};
  acts.finish = {0.3, 0.2, 0.6, 0.9};
  const Trajectory a = greedy_trajectory(GreedyKind::ActivitySelection, acts);
  CHECK(a.output("selected").ints() == Ints{0, 1, 1, 0});
  CHECK(a.length() == 4);
  acts.start[0] = 0.5;
  CHECK(error_kind([&] { greedy_trajectory(GreedyKind::ActivitySelection, acts); }) ==
        ErrorKind::PreconditionViolated);

  SeqInstance tasks;
  tasks.deadline = {1, 1, 2};
  tasks.weight = {0.5, 0.9, 0.1};
  const Trajectory s = greedy_trajectory(GreedyKind::TaskScheduling, tasks);
  CHECK(s.output("selected").ints() == Ints{0, 1, 1});
  CHECK(s.length() == 4);
  tasks.deadline[0] = 1.5;
  CHECK(error_kind([&] { greedy_trajectory(GreedyKind::TaskScheduling, tasks); }) ==
        ErrorKind::PreconditionViolated);
}

TEST_CASE("matrix chain on dims (10,30,5,60) splits after the second matrix, cost 4500") {
  const Trajectory t = matrix_chain_trajectory({{10, 30, 5, 60}, 0});
  const int n = 4;
  const auto& s = t.output("s").ints();
  CHECK(s[1 * n + 3] == 2);
  CHECK(s[1 * n + 2] == 1);
  CHECK(s[2 * n + 3] == 2);
  const auto& m = t.hint(t.length() - 1, "m").scalars();
  CHECK(std::abs(m[1 * n + 3] - 4500.0) <= 1e-9);
  CHECK(std::abs(m[1 * n + 2] - 1500.0) <= 1e-9);
  CHECK(error_kind([] { matrix_chain_trajectory({{10, 0, 5}, 0}); }) ==
        ErrorKind::PreconditionViolated);
}

TEST_CASE("lcs directions on a textbook pair") {
  // x = "ab", y = "ba" over classes a=0, b=1.
  const Trajectory t = lcs_trajectory({{0, 1}, {1, 0}, 0});
  const int n = 4;
  const auto& b = t.output("b").ints();
  CHECK(b[0 * n + 2] == 1);  // a vs b: tie, go up
  CHECK(b[0 * n + 3] == 0);  // a vs a
  CHECK(b[1 * n + 2] == 0);  // b vs b
  CHECK(b[1 * n + 3] == 1);  // tie again
  CHECK(t.length() == 4);
}

TEST_CASE("optimal bst rejects unnormalized probabilities") {
  CHECK(error_kind([] { optimal_bst_trajectory({{0.5}, {0.5, 0.5}, 0}); }) ==
        ErrorKind::PreconditionViolated);
  const Trajectory t = optimal_bst_trajectory({{0.5}, {0.25, 0.25}, 0});
  CHECK(t.output("root").ints() == Ints{0, 0, 0, 0});
}

TEST_CASE("naive matcher finds \"ab\" in \"aab\" at index 1") {
  const Trajectory t = matcher_trajectory(MatcherKind::Naive, {{0, 0, 1}, {0, 1}, 0});
  CHECK(t.output("match").ints() == Ints{0, 1, 0, 0, 0});
  CHECK(t.length() == 4);
  const Trajectory k = matcher_trajectory(MatcherKind::Kmp, {{0, 0, 1}, {0, 1}, 0});
  CHECK(k.output("match").ints() == Ints{0, 1, 0, 0, 0});
  CHECK(error_kind([] { matcher_trajectory(MatcherKind::Naive, {{0, 0}, {1}, 0}); }) ==
        ErrorKind::PreconditionViolated);
}

TEST_CASE("kmp prefix pointers") {
  // needle "aab": pi = [0, 1, 0]; node 4 points at needle node 3 (pi - 1 = 0).
  const Trajectory t = matcher_trajectory(MatcherKind::Kmp, {{0, 0, 1}, {0, 0, 1}, 0});
  const auto& pi = t.hint(t.length() - 1, "pi_h").ints();
  CHECK(pi == Ints{0, 1, 2, 3, 3, 5});
}

TEST_CASE("segments") {
  const Trajectory cross = segments_trajectory({{0, 1, 0, 1}, {0, 1, 1, 0}, 0});
  CHECK(cross.output("intersect").ints() == Ints{1});
  CHECK(cross.length() == 3);
  const Trajectory apart = segments_trajectory({{0, 1, 0, 1}, {0, 0, 1, 1}, 0});
  CHECK(apart.output("intersect").ints() == Ints{0});
  // B's endpoint touches A.
  const Trajectory touch = segments_trajectory({{0, 2, 1, 1}, {0, 0, 0, 1}, 0});
  CHECK(touch.output("intersect").ints() == Ints{1});
}

TEST_CASE("convex hulls") {
  const PointInstance square{{0, 1, 1, 0, 0.5}, {0, 0, 1, 1, 0.4}, 0};
  for (auto kind : {HullKind::Graham, HullKind::Jarvis}) {
    CHECK(hull_trajectory(kind, square).output("in_hull").ints() == Ints{1, 1, 1, 1, 0});
  }
  const PointInstance collinear{{0, 1, 2}, {0, 1, 2}, 0};
  CHECK(error_kind([&] { hull_trajectory(HullKind::Graham, collinear); }) ==
        ErrorKind::DegenerateGeometry);
}

TEST_CASE("graph preconditions") {
  // Self-loop.
  CHECK(error_kind([] {
          graph_trajectory(GraphAlgorithm::Bfs, {2, {1, 0, 0, 0}, {}, 0, 0});
        }) == ErrorKind::PreconditionViolated);
  // Asymmetric adjacency for an undirected algorithm.
  CHECK(error_kind([] {
          graph_trajectory(GraphAlgorithm::Bfs, {2, {0, 1, 0, 0}, {}, 0, 0});
        }) == ErrorKind::PreconditionViolated);
  // Cycle for topological sort.
  CHECK(error_kind([] {
          graph_trajectory(GraphAlgorithm::TopologicalSort, {2, {0, 1, 1, 0}, {}, -1, 0});
        }) == ErrorKind::PreconditionViolated);
  // Negative weight.
  CHECK(error_kind([] {
          graph_trajectory(GraphAlgorithm::Dijkstra, {2, {0, 1, 1, 0}, {0, -1, -1, 0}, 0, 0});
        }) == ErrorKind::PreconditionViolated);
  // Missing source.
  CHECK(error_kind([] {
          graph_trajectory(GraphAlgorithm::Dfs, {2, {0, 1, 0, 0}, {}, -1, 0});
        }) == ErrorKind::PreconditionViolated);
  CHECK(error_kind([] { graph_algorithm("insertion_sort"); }) == ErrorKind::UnknownAlgorithm);
}

TEST_CASE("path graph: bellman-ford and dijkstra pointers walk back to the source") {
  // 0 - 1 - 2 with a heavy shortcut 0 - 2.
  const GraphInstance g{3, {0, 1, 1, 1, 0, 1, 1, 1, 0}, {0, 1, 5, 1, 0, 1, 5, 1, 0}, 0, 0};
  for (auto alg : {GraphAlgorithm::BellmanFord, GraphAlgorithm::Dijkstra}) {
    CHECK(graph_trajectory(alg, g).output("pi").ints() == Ints{0, 0, 1});
  }
  const Trajectory fw = graph_trajectory(GraphAlgorithm::FloydWarshall, {3, g.adj, g.w, -1, 0});
  CHECK(fw.output("Pi").ints() == Ints{0, 0, 1, 1, 1, 1, 1, 2, 2});
}

TEST_CASE("runner decodes sampled frames back into the same run") {
  for (const auto id : algorithm_ids()) {
    CAPTURE(id);
    for (const auto& cfg : testing::random_configs(id, 5, 2, 10, 0x77)) {
      const Trajectory t = generate_trajectory(cfg);
      CHECK(run_algorithm(id, t.inputs, cfg.seed) == t);
      CHECK(t.seed == cfg.seed);
      CHECK(t.algorithm_id == id);
    }
  }
}

TEST_CASE("runner rejects scrambled string layouts") {
  SamplerConfig cfg{"lcs_length", 6, 1, {}};
  Frame in = sample_inputs(cfg);
  for (auto& v : in) {
    if (v.name == "in_second") v.data = Ints{1, 0, 1, 0, 1, 0};
  }
  CHECK(error_kind([&] { run_algorithm("lcs_length", in, 1); }) == ErrorKind::PreconditionViolated);

  SamplerConfig obst{"optimal_bst", 4, 1, {}};
  Frame o = sample_inputs(obst);
  for (auto& v : o) {
    if (v.name == "p") std::get<std::vector<double>>(v.data).back() = 0.1;
  }
  CHECK(error_kind([&] { run_algorithm("optimal_bst", o, 1); }) == ErrorKind::PreconditionViolated);
}

}  // TEST_SUITE
