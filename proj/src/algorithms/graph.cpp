#include "algotrace/algorithms/graph.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <string>
#include <tuple>

#include "common.hpp"

namespace algotrace {

using detail::at;
using detail::emit;
using detail::graph_int;
using detail::Ints;
using detail::push_inputs;
using detail::push_outputs;
using detail::Reals;

namespace {

constexpr std::int32_t kWhite = 0;
constexpr std::int32_t kGray = 1;
constexpr std::int32_t kBlack = 2;

struct Descriptor {
  GraphAlgorithm algorithm;
  std::string_view id;
  bool directed;
  bool acyclic;
  bool weighted;
  bool has_source;
};

constexpr std::array<Descriptor, 12> kDescriptors{{
    {GraphAlgorithm::Bfs, "bfs", false, false, false, true},
    {GraphAlgorithm::Dfs, "dfs", true, false, false, true},
    {GraphAlgorithm::TopologicalSort, "topological_sort", true, true, false, false},
    {GraphAlgorithm::ArticulationPoints, "articulation_points", false, false, false, false},
    {GraphAlgorithm::Bridges, "bridges", false, false, false, false},
    {GraphAlgorithm::SccKosaraju, "scc_kosaraju", true, false, false, false},
    {GraphAlgorithm::MstKruskal, "mst_kruskal", false, false, true, false},
    {GraphAlgorithm::MstPrim, "mst_prim", false, false, true, true},
    {GraphAlgorithm::BellmanFord, "bellman_ford", false, false, true, true},
    {GraphAlgorithm::Dijkstra, "dijkstra", false, false, true, true},
    {GraphAlgorithm::DagShortestPaths, "dag_shortest_paths", true, true, true, true},
    {GraphAlgorithm::FloydWarshall, "floyd_warshall", false, false, true, false},
}};

const Descriptor& describe(GraphAlgorithm algorithm) {
  for (const auto& d : kDescriptors) {
    if (d.algorithm == algorithm) return d;
  }
  throw Error(ErrorKind::UnknownAlgorithm, "graph algorithm");
}

[[noreturn]] void precondition(const std::string& message) {
  throw Error(ErrorKind::PreconditionViolated, message);
}

/// Read-only view with the checks every algorithm relies on.
class Graph {
 public:
  Graph(const GraphInstance& g, const Descriptor& d) : g_(g), n_(g.n) {
    if (n_ < 1) throw Error(ErrorKind::EmptyInput, "graph has no nodes");
    const auto cells = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
    if (g.adj.size() != cells) precondition("adjacency must be n x n");
    if (d.weighted && g.w.size() != cells) precondition("weights must be n x n");
    for (int i = 0; i < n_; ++i) {
      if (g.adj[at(i, i, n_)] != 0) precondition("self-loops are not allowed");
      for (int j = 0; j < n_; ++j) {
        const auto a = g.adj[at(i, j, n_)];
        if (a != 0 && a != 1) precondition("adjacency entries must be 0 or 1");
        if (!d.directed && (a != g.adj[at(j, i, n_)] ||
                            (d.weighted && a && g.w[at(i, j, n_)] != g.w[at(j, i, n_)]))) {
          precondition(std::string(d.id) + " needs a symmetric graph");
        }
        if (d.weighted && a && !(g.w[at(i, j, n_)] >= 0.0)) {
          precondition("edge weights must be non-negative");
        }
      }
    }
    if (d.has_source && (g.source < 0 || g.source >= n_)) {
      precondition(std::string(d.id) + " needs a source node");
    }
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] bool edge(int i, int j) const { return g_.adj[at(i, j, n_)] != 0; }
  [[nodiscard]] double weight(int i, int j) const { return g_.w[at(i, j, n_)]; }
  [[nodiscard]] int source() const { return g_.source; }

 private:
  const GraphInstance& g_;
  int n_;
};

TrajectoryBuilder graph_builder(const Descriptor& d, const GraphInstance& g) {
  TrajectoryBuilder b(get_spec(d.id), g.n, g.seed);
  push_inputs(b, {{"pos", positions(g.n)}, {"adj", g.adj}});
  if (d.weighted) push_inputs(b, {{"w", g.w}});
  if (d.has_source) push_inputs(b, {{"s", one_hot(g.source, g.n)}});
  return b;
}

Ints filled(int n, std::int32_t value) { return Ints(static_cast<std::size_t>(n), value); }
Reals zeros(int n) { return Reals(static_cast<std::size_t>(n), 0.0); }

// ---------------------------------------------------------------------------

Trajectory bfs(const Descriptor& d, const GraphInstance& inst) {
  const Graph g(inst, d);
  auto b = graph_builder(d, inst);
  const int n = g.n();
  Ints pi = identity_pointers(n);
  Ints reach = filled(n, 0);
  reach[g.source()] = 1;
  emit(b, {{"pi_h", pi}, {"reach_h", reach}});

  std::vector<int> frontier{g.source()};
  while (true) {
    std::vector<int> next;
    for (int v = 0; v < n; ++v) {
      if (reach[v]) continue;
      for (int u : frontier) {  // frontier is ascending, so the first hit is the smallest
        if (g.edge(u, v)) {
          pi[v] = u;
          next.push_back(v);
          break;
        }
      }
    }
    if (next.empty()) break;
    for (int v : next) reach[v] = 1;
    frontier = std::move(next);
    emit(b, {{"pi_h", pi}, {"reach_h", reach}});
  }
  push_outputs(b, {{"pi", pi}});
  return b.finalize();
}

Trajectory dfs(const Descriptor& d, const GraphInstance& inst) {
  const Graph g(inst, d);
  auto b = graph_builder(d, inst);
  const int n = g.n();
  Ints pi = identity_pointers(n);
  Ints color = filled(n, kWhite);
  auto record = [&](int u) {
    emit(b, {{"pi_h", pi}, {"color", color}, {"u", one_hot(u, n)}});
  };
  record(g.source());

  auto visit = [&](auto&& self, int u) -> void {
    color[u] = kGray;
    record(u);
    for (int v = 0; v < n; ++v) {
      if (g.edge(u, v) && color[v] == kWhite) {
        pi[v] = u;
        self(self, v);
      }
    }
    color[u] = kBlack;
    record(u);
  };
  visit(visit, g.source());
  push_outputs(b, {{"pi", pi}});
  return b.finalize();
}

/// Full-graph DFS producing a topological order; shared by topological_sort
/// and the first phase of dag_shortest_paths. Raises on a back edge.
class TopoDfs {
 public:
  TopoDfs(const Graph& g, std::function<void(int)> on_event)
      : g_(g), n_(g.n()), pi_(identity_pointers(n_)), color_(filled(n_, kWhite)),
        on_event_(std::move(on_event)) {}

  void run() {
    for (int u = 0; u < n_; ++u) {
      if (color_[u] == kWhite) visit(u);
    }
  }

  [[nodiscard]] const Ints& pi() const { return pi_; }
  [[nodiscard]] const Ints& color() const { return color_; }
  [[nodiscard]] const std::vector<int>& order() const { return order_; }
  [[nodiscard]] Ints order_chain() const { return chain_pointers(order_, n_); }
  [[nodiscard]] Ints order_mask() const {
    Ints m = filled(n_, 0);
    for (int v : order_) m[v] = 1;
    return m;
  }

 private:
  void visit(int u) {
    color_[u] = kGray;
    on_event_(u);
    for (int v = 0; v < n_; ++v) {
      if (!g_.edge(u, v)) continue;
      if (color_[v] == kGray) precondition("graph has a cycle");
      if (color_[v] == kWhite) {
        pi_[v] = u;
        visit(v);
      }
    }
    color_[u] = kBlack;
    order_.insert(order_.begin(), u);
    on_event_(u);
  }

  const Graph& g_;
  int n_;
  Ints pi_;
  Ints color_;
  std::vector<int> order_;
  std::function<void(int)> on_event_;
};

Trajectory topological_sort(const Descriptor& d, const GraphInstance& inst) {
  const Graph g(inst, d);
  auto b = graph_builder(d, inst);
  const int n = g.n();
  TopoDfs* self = nullptr;
  auto record = [&](int u) {
    emit(b, {{"topo_h", self->order_chain()},
             {"topo_mask", self->order_mask()},
             {"pi_h", self->pi()},
             {"color", self->color()},
             {"u", one_hot(u, n)}});
  };
  TopoDfs walk(g, record);
  self = &walk;
  record(0);
  walk.run();
  push_outputs(b, {{"topo", walk.order_chain()}});
  return b.finalize();
}

/// Tarjan-style lowpoint DFS over every component, shared by the cut-vertex
/// and bridge finders.
class LowpointDfs {
 public:
  explicit LowpointDfs(const Graph& g)
      : g_(g), n_(g.n()), pi_(identity_pointers(n_)), color_(filled(n_, kWhite)),
        d_(zeros(n_)), low_(zeros(n_)), is_cut_(filled(n_, 0)),
        is_bridge_(filled(n_ * n_, 0)) {}

  template <class Record>
  void run(Record&& record) {
    record(0);
    for (int u = 0; u < n_; ++u) {
      if (color_[u] == kWhite) visit(u, record);
    }
  }

  const Ints& pi() const { return pi_; }
  const Ints& color() const { return color_; }
  const Reals& d() const { return d_; }
  const Reals& low() const { return low_; }
  const Ints& is_cut() const { return is_cut_; }
  const Ints& is_bridge() const { return is_bridge_; }

 private:
  template <class Record>
  void visit(int u, Record& record) {
    color_[u] = kGray;
    d_[u] = low_[u] = ++time_;
    record(u);
    const bool root = pi_[u] == u;
    int children = 0;
    for (int v = 0; v < n_; ++v) {
      if (!g_.edge(u, v)) continue;
      if (color_[v] == kWhite) {
        pi_[v] = u;
        ++children;
        visit(v, record);
        // The child's finish frame has been emitted; fold its lowpoint into u.
        low_[u] = std::min(low_[u], low_[v]);
        if (!root && low_[v] >= d_[u]) is_cut_[u] = 1;
        if (low_[v] > d_[u]) {
          is_bridge_[at(u, v, n_)] = 1;
          is_bridge_[at(v, u, n_)] = 1;
        }
      } else if (v != pi_[u]) {
        low_[u] = std::min(low_[u], d_[v]);
      }
    }
    if (root && children >= 2) is_cut_[u] = 1;
    color_[u] = kBlack;
    record(u);
  }

  const Graph& g_;
  int n_;
  int time_ = 0;
  Ints pi_, color_;
  Reals d_, low_;
  Ints is_cut_, is_bridge_;
};

Trajectory articulation_points(const Descriptor& d, const GraphInstance& inst) {
  const Graph g(inst, d);
  auto b = graph_builder(d, inst);
  const int n = g.n();
  LowpointDfs walk(g);
  walk.run([&](int u) {
    emit(b, {{"pi_h", walk.pi()},
             {"color", walk.color()},
             {"d", walk.d()},
             {"low", walk.low()},
             {"is_cut_h", walk.is_cut()},
             {"u", one_hot(u, n)}});
  });
  push_outputs(b, {{"is_cut", walk.is_cut()}});
  return b.finalize();
}

Trajectory bridges(const Descriptor& d, const GraphInstance& inst) {
  const Graph g(inst, d);
  auto b = graph_builder(d, inst);
  const int n = g.n();
  LowpointDfs walk(g);
  walk.run([&](int u) {
    emit(b, {{"pi_h", walk.pi()},
             {"color", walk.color()},
             {"d", walk.d()},
             {"low", walk.low()},
             {"is_bridge_h", walk.is_bridge()},
             {"u", one_hot(u, n)}});
  });
  push_outputs(b, {{"is_bridge", walk.is_bridge()}});
  return b.finalize();
}

Trajectory scc_kosaraju(const Descriptor& d, const GraphInstance& inst) {
  const Graph g(inst, d);
  auto b = graph_builder(d, inst);
  const int n = g.n();
  Ints scc = identity_pointers(n);
  Ints pi = identity_pointers(n);
  Ints color = filled(n, kWhite);
  std::int32_t phase = 0;
  auto record = [&](int u) {
    emit(b, {{"scc_h", scc},
             {"pi_h", pi},
             {"color", color},
             {"u", one_hot(u, n)},
             {"phase", graph_int(phase)}});
  };
  record(0);

  std::vector<int> finished;
  auto first = [&](auto&& self, int u) -> void {
    color[u] = kGray;
    record(u);
    for (int v = 0; v < n; ++v) {
      if (g.edge(u, v) && color[v] == kWhite) {
        pi[v] = u;
        self(self, v);
      }
    }
    color[u] = kBlack;
    finished.push_back(u);
    record(u);
  };
  for (int u = 0; u < n; ++u) {
    if (color[u] == kWhite) first(first, u);
  }

  phase = 1;
  pi = identity_pointers(n);
  color = filled(n, kWhite);
  auto second = [&](auto&& self, int u, int root) -> void {
    color[u] = kGray;
    scc[u] = root;
    record(u);
    for (int v = 0; v < n; ++v) {
      if (g.edge(v, u) && color[v] == kWhite) {  // transposed graph
        pi[v] = u;
        self(self, v, root);
      }
    }
    color[u] = kBlack;
    record(u);
  };
  for (auto it = finished.rbegin(); it != finished.rend(); ++it) {
    if (color[*it] == kWhite) second(second, *it, *it);
  }

  std::vector<int> smallest(static_cast<std::size_t>(n), n);
  for (int v = 0; v < n; ++v) smallest[scc[v]] = std::min(smallest[scc[v]], v);
  Ints out(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) out[v] = smallest[scc[v]];
  push_outputs(b, {{"scc", out}});
  return b.finalize();
}

Trajectory mst_kruskal(const Descriptor& d, const GraphInstance& inst) {
  const Graph g(inst, d);
  auto b = graph_builder(d, inst);
  const int n = g.n();

  std::vector<std::tuple<double, int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.edge(u, v)) edges.emplace_back(g.weight(u, v), u, v);
    }
  }
  std::sort(edges.begin(), edges.end());

  Ints parent = identity_pointers(n);
  std::vector<int> rank(static_cast<std::size_t>(n), 0);
  Ints in_mst = filled(n * n, 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  auto record = [&](int u, int v) {
    emit(b, {{"in_mst_h", in_mst}, {"uf", parent}, {"u", one_hot(u, n)}, {"v", one_hot(v, n)}});
  };
  if (edges.empty()) {
    record(0, 0);
  } else {
    record(std::get<1>(edges[0]), std::get<2>(edges[0]));
  }
  for (const auto& [w, u, v] : edges) {
    const int ru = find(u);
    const int rv = find(v);
    if (ru != rv) {
      if (rank[ru] < rank[rv]) {
        parent[ru] = rv;
      } else if (rank[ru] > rank[rv]) {
        parent[rv] = ru;
      } else {
        parent[rv] = ru;
        ++rank[ru];
      }
      in_mst[at(u, v, n)] = 1;
      in_mst[at(v, u, n)] = 1;
    }
    record(u, v);
  }
  push_outputs(b, {{"in_mst", in_mst}});
  return b.finalize();
}

/// Prim and Dijkstra share the extract-min loop and differ only in the
/// priority offered to a neighbour.
template <class Priority>
Trajectory extract_min_search(const Descriptor& d, const GraphInstance& inst,
                              std::string_view value_name, Priority priority) {
  const Graph g(inst, d);
  auto b = graph_builder(d, inst);
  const int n = g.n();
  Ints pi = identity_pointers(n);
  Reals value = zeros(n);
  Ints mark = filled(n, 0);
  Ints in_queue = filled(n, 0);
  in_queue[g.source()] = 1;
  auto record = [&](int u) {
    emit(b, {{"pi_h", pi},
             {value_name, value},
             {"mark", mark},
             {"in_queue", in_queue},
             {"u", one_hot(u, n)}});
  };
  record(g.source());

  while (true) {
    int u = -1;
    for (int v = 0; v < n; ++v) {
      if (in_queue[v] && (u < 0 || value[v] < value[u])) u = v;
    }
    if (u < 0) break;
    in_queue[u] = 0;
    mark[u] = 1;
    for (int v = 0; v < n; ++v) {
      if (!g.edge(u, v) || mark[v]) continue;
      const double candidate = priority(value[u], g.weight(u, v));
      if (!in_queue[v] || candidate < value[v]) {
        value[v] = candidate;
        pi[v] = u;
        in_queue[v] = 1;
      }
    }
    record(u);
  }
  push_outputs(b, {{"pi", pi}});
  return b.finalize();
}

Trajectory bellman_ford(const Descriptor& d, const GraphInstance& inst) {
  const Graph g(inst, d);
  auto b = graph_builder(d, inst);
  const int n = g.n();
  Ints pi = identity_pointers(n);
  Reals dist = zeros(n);
  Ints msk = filled(n, 0);
  msk[g.source()] = 1;
  emit(b, {{"pi_h", pi}, {"d", dist}, {"msk", msk}});

  for (int round = 1; round < n; ++round) {
    Reals next_dist = dist;
    Ints next_pi = pi;
    Ints next_msk = msk;
    bool changed = false;
    for (int v = 0; v < n; ++v) {
      for (int u = 0; u < n; ++u) {
        if (!msk[u] || !g.edge(u, v)) continue;
        const double candidate = dist[u] + g.weight(u, v);
        if (!next_msk[v] || candidate < next_dist[v]) {
          next_dist[v] = candidate;
          next_pi[v] = u;
          next_msk[v] = 1;
          changed = true;
        }
      }
    }
    if (!changed) break;
    dist = std::move(next_dist);
    pi = std::move(next_pi);
    msk = std::move(next_msk);
    emit(b, {{"pi_h", pi}, {"d", dist}, {"msk", msk}});
  }
  push_outputs(b, {{"pi", pi}});
  return b.finalize();
}

Trajectory dag_shortest_paths(const Descriptor& d, const GraphInstance& inst) {
  const Graph g(inst, d);
  auto b = graph_builder(d, inst);
  const int n = g.n();
  Ints pi = identity_pointers(n);
  Reals dist = zeros(n);
  Ints reach = filled(n, 0);
  reach[g.source()] = 1;
  std::int32_t phase = 0;

  TopoDfs* walk_ptr = nullptr;
  auto record = [&](int u) {
    emit(b, {{"pi_h", pi},
             {"d", dist},
             {"reach", reach},
             {"color", walk_ptr->color()},
             {"topo_h", walk_ptr->order_chain()},
             {"topo_mask", walk_ptr->order_mask()},
             {"u", one_hot(u, n)},
             {"phase", graph_int(phase)}});
  };
  TopoDfs walk(g, record);
  walk_ptr = &walk;
  record(0);
  walk.run();

  phase = 1;
  for (int u : walk.order()) {
    if (reach[u]) {
      for (int v = 0; v < n; ++v) {
        if (!g.edge(u, v)) continue;
        const double candidate = dist[u] + g.weight(u, v);
        if (!reach[v] || candidate < dist[v]) {
          dist[v] = candidate;
          pi[v] = u;
          reach[v] = 1;
        }
      }
    }
    record(u);
  }
  push_outputs(b, {{"pi", pi}});
  return b.finalize();
}

Trajectory floyd_warshall(const Descriptor& d, const GraphInstance& inst) {
  const Graph g(inst, d);
  auto b = graph_builder(d, inst);
  const int n = g.n();
  Ints pred = filled(n * n, 0);
  Reals dist = zeros(n * n);
  Ints msk = filled(n * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto c = at(i, j, n);
      if (i == j) {
        msk[c] = 1;
        pred[c] = i;
      } else if (g.edge(i, j)) {
        msk[c] = 1;
        dist[c] = g.weight(i, j);
        pred[c] = i;
      } else {
        pred[c] = j;
      }
    }
  }
  emit(b, {{"Pi_h", pred}, {"D", dist}, {"msk", msk}, {"k", one_hot(0, n)}});
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!msk[at(i, k, n)]) continue;
      for (int j = 0; j < n; ++j) {
        if (!msk[at(k, j, n)]) continue;
        const double through = dist[at(i, k, n)] + dist[at(k, j, n)];
        const auto c = at(i, j, n);
        if (!msk[c] || through < dist[c]) {
          dist[c] = through;
          pred[c] = pred[at(k, j, n)];
          msk[c] = 1;
        }
      }
    }
    emit(b, {{"Pi_h", pred}, {"D", dist}, {"msk", msk}, {"k", one_hot(k, n)}});
  }
  push_outputs(b, {{"Pi", pred}});
  return b.finalize();
}

}  // namespace

GraphAlgorithm graph_algorithm(std::string_view algorithm_id) {
  for (const auto& d : kDescriptors) {
    if (d.id == algorithm_id) return d.algorithm;
  }
  throw Error(ErrorKind::UnknownAlgorithm, std::string(algorithm_id));
}

std::string_view to_string(GraphAlgorithm algorithm) { return describe(algorithm).id; }

Trajectory graph_trajectory(GraphAlgorithm algorithm, const GraphInstance& instance) {
  const Descriptor& d = describe(algorithm);
  switch (algorithm) {
    case GraphAlgorithm::Bfs: return bfs(d, instance);
    case GraphAlgorithm::Dfs: return dfs(d, instance);
    case GraphAlgorithm::TopologicalSort: return topological_sort(d, instance);
    case GraphAlgorithm::ArticulationPoints: return articulation_points(d, instance);
    case GraphAlgorithm::Bridges: return bridges(d, instance);
    case GraphAlgorithm::SccKosaraju: return scc_kosaraju(d, instance);
    case GraphAlgorithm::MstKruskal: return mst_kruskal(d, instance);
    case GraphAlgorithm::MstPrim:
      return extract_min_search(d, instance, "key", [](double, double w) { return w; });
    case GraphAlgorithm::BellmanFord: return bellman_ford(d, instance);
    case GraphAlgorithm::Dijkstra:
      return extract_min_search(d, instance, "d", [](double du, double w) { return du + w; });
    case GraphAlgorithm::DagShortestPaths: return dag_shortest_paths(d, instance);
    case GraphAlgorithm::FloydWarshall: return floyd_warshall(d, instance);
  }
  throw Error(ErrorKind::UnknownAlgorithm, "graph algorithm");
}

}  // namespace algotrace
