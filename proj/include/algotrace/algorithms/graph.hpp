#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "algotrace/probing.hpp"

namespace algotrace {

/// Dense graph instance. `adj` and `w` are row-major n x n; undirected graphs
/// must be stored symmetrically. `source` is -1 for algorithms without one.
struct GraphInstance {
  int n = 0;
  std::vector<std::int32_t> adj;
  std::vector<double> w;
  int source = -1;
  std::uint64_t seed = 0;
};

enum class GraphAlgorithm {
  Bfs,
  Dfs,
  TopologicalSort,
  ArticulationPoints,
  Bridges,
  SccKosaraju,
  MstKruskal,
  MstPrim,
  BellmanFord,
  Dijkstra,
  DagShortestPaths,
  FloydWarshall,
};

/// Throws UnknownAlgorithm if `algorithm_id` is not a graph algorithm.
GraphAlgorithm graph_algorithm(std::string_view algorithm_id);
std::string_view to_string(GraphAlgorithm algorithm);

/// Runs the instrumented algorithm. Structural preconditions (symmetry for
/// undirected algorithms, acyclicity, non-negative weights, a source where one
/// is needed) raise PreconditionViolated.
Trajectory graph_trajectory(GraphAlgorithm algorithm, const GraphInstance& instance);

}  // namespace algotrace
