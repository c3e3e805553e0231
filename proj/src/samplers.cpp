#include "algotrace/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "algotrace/spec_registry.hpp"

namespace algotrace {
namespace {

constexpr int kMaxResamples = 100000;

struct ShapeEntry {
  std::string_view id;
  GraphShape shape;
};

// directed, acyclic, weighted, has_source
constexpr ShapeEntry kGraphShapes[] = {
    {"bfs", {false, false, false, true}},
    {"dfs", {true, false, false, true}},
    {"topological_sort", {true, true, false, false}},
    {"articulation_points", {false, false, false, false}},
    {"bridges", {false, false, false, false}},
    {"scc_kosaraju", {true, false, false, false}},
    {"mst_kruskal", {false, false, true, false}},
    {"mst_prim", {false, false, true, true}},
    {"bellman_ford", {false, false, true, true}},
    {"dijkstra", {false, false, true, true}},
    {"dag_shortest_paths", {true, true, true, true}},
    {"floyd_warshall", {false, false, true, false}},
};

using Ints = std::vector<std::int32_t>;
using Reals = std::vector<double>;

Reals uniform_reals(CounterRng& rng, int n) {
  Reals v(static_cast<std::size_t>(n));
  for (auto& x : v) x = rng.uniform();
  return v;
}

double cross(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

bool has_collinear_triple(const Reals& x, const Reals& y) {
  const std::size_t n = x.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (std::abs(cross(x[a], y[a], x[b], y[b], x[c], y[c])) <= kCollinearTolerance) return true;
      }
    }
  }
  return false;
}

bool segments_cross(const Reals& x, const Reals& y) {
  auto d = [&](int i, int j, int k) { return cross(x[i], y[i], x[j], y[j], x[k], y[k]); };
  const double d1 = d(2, 3, 0), d2 = d(2, 3, 1), d3 = d(0, 1, 2), d4 = d(0, 1, 3);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

Frame geometry_frame(int n, Reals x, Reals y) {
  return {{"pos", positions(n)}, {"x", std::move(x)}, {"y", std::move(y)}};
}

Frame sample_points(CounterRng& rng, int n) {
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    Reals x = uniform_reals(rng, n);
    Reals y = uniform_reals(rng, n);
    if (!has_collinear_triple(x, y)) return geometry_frame(n, std::move(x), std::move(y));
  }
  throw Error(ErrorKind::InvalidConfig, "could not sample a non-degenerate point set");
}

Frame sample_segments(CounterRng& rng, const SamplerKnobs& knobs) {
  const bool want = rng.bernoulli(knobs.intersect_fraction);
  for (int attempt = 0; attempt < kMaxResamples; ++attempt) {
    Reals x = uniform_reals(rng, 4);
    Reals y = uniform_reals(rng, 4);
    if (has_collinear_triple(x, y)) continue;
    if (segments_cross(x, y) == want) return geometry_frame(4, std::move(x), std::move(y));
  }
  throw Error(ErrorKind::InvalidConfig, "could not sample segments with the requested label");
}

Frame sample_graph(CounterRng& rng, int n, const GraphShape& shape, double p) {
  const auto nn = static_cast<std::size_t>(n);
  Ints adj(nn * nn, 0);
  Reals w(nn * nn, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!shape.directed && j < i) continue;
      if (shape.acyclic && j < i) continue;
      if (!rng.bernoulli(p)) continue;
      // Weights in (0, 1] so every present edge is strictly positive.
      const double weight = shape.weighted ? 1.0 - rng.uniform() : 0.0;
      adj[i * nn + j] = 1;
      w[i * nn + j] = weight;
      if (!shape.directed) {
        adj[j * nn + i] = 1;
        w[j * nn + i] = weight;
      }
    }
  }
  Frame frame{{"pos", positions(n)}, {"adj", std::move(adj)}};
  if (shape.weighted) frame.push_back({"w", std::move(w)});
  if (shape.has_source) {
    frame.push_back({"s", one_hot(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))), n)});
  }
  return frame;
}

Ints random_chars(CounterRng& rng, int count, int alphabet) {
  Ints v(static_cast<std::size_t>(count));
  for (auto& c : v) c = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(alphabet)));
  return v;
}

// Two strings laid out back to back; `second_len` trailing nodes belong to the second one.
Frame string_frame(int n, Ints chars, int second_len, std::string_view membership) {
  Ints member(static_cast<std::size_t>(n), 0);
  Ints pred = identity_pointers(n);
  const int first_len = n - second_len;
  for (int i = 0; i < n; ++i) {
    member[i] = i >= first_len ? 1 : 0;
    if (i != 0 && i != first_len) pred[i] = i - 1;
  }
  return {{"pos", positions(n)},
          {"ch", std::move(chars)},
          {std::string(membership), std::move(member)},
          {"str_pred", std::move(pred)}};
}

Frame sample_matcher(CounterRng& rng, int n, const SamplerKnobs& knobs) {
  const int needle = std::max(1, static_cast<int>(std::floor(knobs.needle_fraction * n)));
  const int haystack = n - needle;
  if (haystack < needle) {
    throw Error(ErrorKind::InvalidConfig, "needle longer than haystack for n=" + std::to_string(n));
  }
  Ints chars = random_chars(rng, n, knobs.alphabet_size);
  const auto offset = static_cast<int>(rng.below(static_cast<std::uint64_t>(haystack - needle + 1)));
  for (int k = 0; k < needle; ++k) chars[offset + k] = chars[haystack + k];
  return string_frame(n, std::move(chars), needle, "in_needle");
}

void validate(const SamplerConfig& cfg) {
  const int minimum = minimum_nodes(cfg.algorithm_id);
  if (cfg.n < minimum) {
    throw Error(ErrorKind::InvalidConfig, cfg.algorithm_id + " needs at least " +
                                              std::to_string(minimum) + " nodes, got " +
                                              std::to_string(cfg.n));
  }
  if (cfg.algorithm_id == "segments_intersect" && cfg.n != 4) {
    throw Error(ErrorKind::InvalidConfig, "segments_intersect takes exactly 4 nodes");
  }
  const auto& k = cfg.knobs;
  if (!(k.er_edge_prob > 0.0 && k.er_edge_prob <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "er_edge_prob must lie in (0, 1]");
  }
  if (k.alphabet_size < 2 || k.alphabet_size > 4) {
    throw Error(ErrorKind::InvalidConfig, "alphabet_size must lie in [2, 4] (spec class count)");
  }
  if (!(k.needle_fraction > 0.0 && k.needle_fraction < 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "needle_fraction must lie in (0, 1)");
  }
  if (!(k.intersect_fraction >= 0.0 && k.intersect_fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "intersect_fraction must lie in [0, 1]");
  }
}

}  // namespace

std::optional<GraphShape> graph_shape(std::string_view algorithm_id) {
  for (const auto& e : kGraphShapes) {
    if (e.id == algorithm_id) return e.shape;
  }
  return std::nullopt;
}

int minimum_nodes(std::string_view algorithm_id) {
  const AlgorithmSpec& spec = get_spec(algorithm_id);
  if (algorithm_id == "segments_intersect") return 4;
  if (algorithm_id == "graham_scan" || algorithm_id == "jarvis_march") return 3;
  if (spec.family == Family::Strings || spec.family == Family::DynamicProgramming) return 2;
  return 1;
}

int effective_nodes(std::string_view algorithm_id, int requested) {
  return algorithm_id == "segments_intersect" ? 4 : requested;
}

Frame sample_inputs(const SamplerConfig& cfg) {
  validate(cfg);
  CounterRng rng(cfg.seed);
  const int n = cfg.n;
  const std::string& id = cfg.algorithm_id;

  if (auto shape = graph_shape(id)) return sample_graph(rng, n, *shape, cfg.knobs.er_edge_prob);

  if (id == "insertion_sort" || id == "bubble_sort" || id == "heapsort" || id == "quicksort" ||
      id == "minimum" || id == "quickselect") {
    return {{"pos", positions(n)}, {"key", uniform_reals(rng, n)}};
  }
  if (id == "binary_search") {
    Reals keys = uniform_reals(rng, n);
    std::sort(keys.begin(), keys.end());
    const double target = rng.uniform();
    return {{"pos", positions(n)}, {"key", std::move(keys)}, {"target", Reals{target}}};
  }
  if (id == "find_maximum_subarray") {
    Reals keys = uniform_reals(rng, n);
    for (auto& k : keys) k -= 0.5;
    return {{"pos", positions(n)}, {"key", std::move(keys)}};
  }
  if (id == "activity_selection") {
    Reals s(static_cast<std::size_t>(n)), f(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double a = rng.uniform();
      const double b = rng.uniform();
      s[i] = std::min(a, b);
      f[i] = std::max(a, b);
    }
    return {{"pos", positions(n)}, {"s", std::move(s)}, {"f", std::move(f)}};
  }
  if (id == "task_scheduling") {
    Reals d(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      d[i] = 1.0 + std::floor(rng.uniform() * n);
      w[i] = rng.uniform();
    }
    return {{"pos", positions(n)}, {"d", std::move(d)}, {"w", std::move(w)}};
  }
  if (id == "matrix_chain_order") {
    return {{"pos", positions(n)}, {"p", uniform_reals(rng, n)}};
  }
  if (id == "lcs_length") {
    const int second = n / 2;
    return string_frame(n, random_chars(rng, n, cfg.knobs.alphabet_size), second, "in_second");
  }
  if (id == "optimal_bst") {
    Reals p = uniform_reals(rng, n - 1);
    Reals q = uniform_reals(rng, n);
    const double total = std::accumulate(p.begin(), p.end(), 0.0) +
                         std::accumulate(q.begin(), q.end(), 0.0);
    for (auto& x : p) x /= total;
    for (auto& x : q) x /= total;
    p.push_back(0.0);
    return {{"pos", positions(n)}, {"p", std::move(p)}, {"q", std::move(q)}};
  }
  if (id == "naive_string_matcher" || id == "kmp_matcher") return sample_matcher(rng, n, cfg.knobs);
  if (id == "segments_intersect") return sample_segments(rng, cfg.knobs);
  if (id == "graham_scan" || id == "jarvis_march") return sample_points(rng, n);

  throw Error(ErrorKind::UnknownAlgorithm, id);
}

SplitPlan plan_split(std::string_view algorithm_id, Split split, const SplitOverrides& overrides) {
  const AlgorithmSpec& spec = get_spec(algorithm_id);
  SplitPlan plan;
  switch (split) {
    case Split::Train:
      plan = {overrides.train_count.value_or(1000), overrides.train_nodes.value_or(16)};
      break;
    case Split::Val:
      plan = {overrides.val_count.value_or(32), overrides.train_nodes.value_or(16)};
      break;
    case Split::Test:
      plan = {overrides.test_count.value_or(32), overrides.test_nodes.value_or(64)};
      break;
  }
  if (spec.has_graph_output()) plan.count *= kGraphOutputMultiplier;
  plan.n = effective_nodes(algorithm_id, plan.n);
  return plan;
}

SamplerConfig split_item_config(std::string_view algorithm_id, Split split, std::uint64_t seed,
                                std::size_t index, const SplitPlan& plan,
                                const SamplerKnobs& knobs) {
  return {std::string(algorithm_id), plan.n, derive_seed(seed, algorithm_id, split, index), knobs};
}

std::vector<Frame> sample_split(std::string_view algorithm_id, Split split, std::uint64_t seed,
                                const SplitOverrides& overrides, const SamplerKnobs& knobs) {
  const SplitPlan plan = plan_split(algorithm_id, split, overrides);
  std::vector<Frame> frames;
  frames.reserve(plan.count);
  for (std::size_t i = 0; i < plan.count; ++i) {
    frames.push_back(sample_inputs(split_item_config(algorithm_id, split, seed, i, plan, knobs)));
  }
  return frames;
}

}  // namespace algotrace
