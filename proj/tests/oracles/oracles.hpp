#pragma once

// Brute-force reference implementations used to check the instrumented
// algorithms. They read the raw input frame directly and share no code with
// the library's runner or algorithm sources. Most are exponential or cubic
// and only meant for the small instances used in tests.

#include <string_view>
#include <vector>

#include "algotrace/probing.hpp"

namespace oracle {

/// The OUTPUT frame the algorithm must produce on `inputs`, in spec order.
algotrace::Frame expected_outputs(std::string_view algorithm_id, const algotrace::Frame& inputs);

/// Largest node count the oracle for `algorithm_id` handles in reasonable time.
int max_nodes(std::string_view algorithm_id);

// Pieces reused by property tests.

/// Node order after a stable sort of `key`.
std::vector<int> stable_order(const std::vector<double>& key);

/// Predecessor array of an ordering: first element self-loops.
std::vector<std::int32_t> chain(const std::vector<int>& order);

/// Follows a predecessor chain from its tail back to the head; empty if the
/// pointers do not form one list covering every node.
std::vector<int> walk_chain(const std::vector<std::int32_t>& pred);

/// Shortest-path distances by textbook Bellman-Ford (n - 1 rounds over every
/// edge). Unreachable nodes get +infinity. `adj` and `w` are n x n row-major.
std::vector<double> bellman_ford_distances(int n, const std::vector<std::int32_t>& adj,
                                           const std::vector<double>& w, int source);

/// O(n^2) array-scan Dijkstra.
std::vector<double> dijkstra_distances(int n, const std::vector<std::int32_t>& adj,
                                       const std::vector<double>& w, int source);

}  // namespace oracle
