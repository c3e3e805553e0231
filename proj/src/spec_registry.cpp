#include "algotrace/spec_registry.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "algotrace/error.hpp"

namespace algotrace {
namespace {

constexpr ProbeType scalar() { return {ProbeKind::Scalar, 0}; }
constexpr ProbeType categorical(int k) { return {ProbeKind::Categorical, k}; }
constexpr ProbeType mask() { return {ProbeKind::Mask, 0}; }
constexpr ProbeType mask_one() { return {ProbeKind::MaskOne, 0}; }
constexpr ProbeType pointer() { return {ProbeKind::Pointer, 0}; }

constexpr int kAlphabet = 4;
constexpr int kColors = 3;

ProbeSpec in(std::string name, Location loc, ProbeType type) {
  return {std::move(name), Stage::Input, loc, type};
}
ProbeSpec out(std::string name, Location loc, ProbeType type) {
  return {std::move(name), Stage::Output, loc, type};
}
ProbeSpec hint(std::string name, Location loc, ProbeType type) {
  return {std::move(name), Stage::Hint, loc, type};
}

constexpr auto N = Location::Node;
constexpr auto E = Location::Edge;
constexpr auto G = Location::Graph;

ProbeSpec pos() { return in("pos", N, scalar()); }

std::vector<ProbeSpec> sorting_probes(std::vector<ProbeSpec> hints) {
  std::vector<ProbeSpec> probes{pos(), in("key", N, scalar()), out("pred", N, pointer())};
  probes.insert(probes.end(), hints.begin(), hints.end());
  return probes;
}

std::vector<ProbeSpec> partition_hints() {
  return {hint("pred_h", N, pointer()), hint("lo", N, mask_one()), hint("hi", N, mask_one()),
          hint("boundary", N, mask_one()), hint("j", N, mask_one())};
}

std::vector<ProbeSpec> graph_inputs(bool weighted, bool source) {
  std::vector<ProbeSpec> probes{pos(), in("adj", E, mask())};
  if (weighted) probes.push_back(in("w", E, scalar()));
  if (source) probes.push_back(in("s", N, mask_one()));
  return probes;
}

std::vector<ProbeSpec> concat(std::vector<ProbeSpec> a, const std::vector<ProbeSpec>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<ProbeSpec> string_inputs(std::string membership) {
  return {pos(), in("ch", N, categorical(kAlphabet)), in(std::move(membership), N, mask()),
          in("str_pred", N, pointer())};
}

std::vector<ProbeSpec> geometry_inputs() {
  return {pos(), in("x", N, scalar()), in("y", N, scalar())};
}

struct Entry {
  AlgorithmSpec spec;
  std::string_view notes;
};

std::vector<Entry> build_registry() {
  std::vector<Entry> r;
  auto add = [&](std::string id, Family family, std::vector<ProbeSpec> probes,
                 std::string_view notes) {
    r.push_back({AlgorithmSpec{std::move(id), family, std::move(probes)}, notes});
  };

  add("insertion_sort", Family::Sorting,
      sorting_probes({hint("pred_h", N, pointer()), hint("iter", N, mask_one()),
                      hint("slot", N, mask_one())}),
      "pred_h holds the list under construction; iter marks the node being inserted and slot "
      "the node it is spliced against. Frame 0 is the initial identity list.");
  add("bubble_sort", Family::Sorting,
      sorting_probes({hint("pred_h", N, pointer()), hint("i", N, mask_one()),
                      hint("j", N, mask_one())}),
      "One frame per compare-exchange of the inner loop; i and j mark the nodes at the "
      "outer and inner array slots.");
  add("heapsort", Family::Sorting,
      sorting_probes({hint("pred_h", N, pointer()), hint("parent", N, pointer()),
                      hint("i", N, mask_one()), hint("largest", N, mask_one()),
                      hint("heap_size", N, mask_one()),
                      hint("phase", G, categorical(2))}),
      "pred_h is the array order, parent the heap tree over slots < heap_size (root and "
      "out-of-heap nodes self-loop); heap_size marks the last in-heap slot. One frame per "
      "max-heapify step. phase 0 = build, 1 = extraction.");
  add("quicksort", Family::Sorting, sorting_probes(partition_hints()),
      "Lomuto partition with pivot at hi. boundary marks slot i+1 (first slot of the "
      "greater-than-pivot region). One frame per partition step plus one after the pivot "
      "is placed.");

  add("minimum", Family::Searching,
      {pos(), in("key", N, scalar()), out("min", N, mask_one()), hint("min_h", N, mask_one()),
       hint("i", N, mask_one())},
      "One frame per scan step; ties resolve to the smaller position.");
  add("binary_search", Family::Searching,
      {pos(), in("key", N, scalar()), in("target", G, scalar()), out("result", N, mask_one()),
       hint("low", N, mask_one()), hint("high", N, mask_one()), hint("mid", N, mask_one())},
      "Keys ascending. result marks the largest key <= target (node 0 if every key exceeds "
      "the target).");
  add("quickselect", Family::Searching,
      concat({pos(), in("key", N, scalar()), out("median", N, mask_one())}, partition_hints()),
      "Selects order statistic k = floor(n/2) (0-based). Hints as quicksort.");

  add("find_maximum_subarray", Family::DivideAndConquer,
      {pos(), in("key", N, scalar()), out("start", N, mask_one()), out("end", N, mask_one()),
       hint("best_start", N, mask_one()), hint("best_end", N, mask_one()),
       hint("cur_start", N, mask_one()), hint("i", N, mask_one()),
       hint("best_sum", G, scalar()), hint("cur_sum", G, scalar())},
      "Kadane scan. Keys are stored recentred (U(0,1) - 0.5). Ties prefer the smaller start, "
      "then the smaller end.");

  add("activity_selection", Family::Greedy,
      {pos(), in("s", N, scalar()), in("f", N, scalar()), out("selected", N, mask()),
       hint("pred_h", N, pointer()), hint("selected_h", N, mask()), hint("m", N, mask_one()),
       hint("k", N, mask_one())},
      "pred_h chains activities by (finish, position). Activities are half-open [s, f).");
  add("task_scheduling", Family::Greedy,
      {pos(), in("d", N, scalar()), in("w", N, scalar()), out("selected", N, mask()),
       hint("pred_h", N, pointer()), hint("selected_h", N, mask()), hint("i", N, mask_one()),
       hint("t", G, scalar())},
      "Unit-time tasks with integer deadlines in {1..n}; matroid greedy by decreasing "
      "weight. t counts accepted tasks.");

  add("matrix_chain_order", Family::DynamicProgramming,
      {pos(), in("p", N, scalar()), out("s", E, pointer()), hint("s_h", E, pointer()),
       hint("m", E, scalar()), hint("msk", E, mask())},
      "Node k carries dimension p_k; matrix i (1 <= i < n) is p_{i-1} x p_i. Edge (i, j) "
      "holds the chain i..j; s points at the split k. Undefined cells hold 0. Frame t fills "
      "chains of t + 1 matrices.");
  add("lcs_length", Family::DynamicProgramming,
      {pos(), in("ch", N, categorical(kAlphabet)), in("in_second", N, mask()),
       in("str_pred", N, pointer()), out("b", E, categorical(3)),
       hint("b_h", E, categorical(3)), hint("c", E, scalar()), hint("msk", E, mask())},
      "Edge (a, b) with a in the first string and b in the second holds the textbook "
      "direction: 0 = diagonal, 1 = up, 2 = left. Undefined cells hold 0. One frame per "
      "anti-diagonal.");
  add("optimal_bst", Family::DynamicProgramming,
      {pos(), in("p", N, scalar()), in("q", N, scalar()), out("root", E, pointer()),
       hint("root_h", E, pointer()), hint("e", E, scalar()), hint("w", E, scalar()),
       hint("msk", E, mask())},
      "Node i carries q_i and p_{i+1} (last node p = 0). Edge (a, b), a < b, covers keys "
      "a+1..b; root points at node r-1 for key r. Undefined cells hold 0.");

  add("bfs", Family::Graphs,
      concat(graph_inputs(false, true),
             {out("pi", N, pointer()), hint("pi_h", N, pointer()), hint("reach_h", N, mask())}),
      "Undirected. Level-synchronous; parent is the smallest-position node of the previous "
      "level. Unreachable nodes point to themselves.");
  add("dfs", Family::Graphs,
      concat(graph_inputs(false, true),
             {out("pi", N, pointer()), hint("pi_h", N, pointer()),
              hint("color", N, categorical(kColors)), hint("u", N, mask_one())}),
      "Directed, single source, neighbours in increasing position. One frame per discovery "
      "and per finish.");
  add("topological_sort", Family::Graphs,
      concat(graph_inputs(false, false),
             {out("topo", N, pointer()), hint("topo_h", N, pointer()),
              hint("topo_mask", N, mask()), hint("pi_h", N, pointer()),
              hint("color", N, categorical(kColors)), hint("u", N, mask_one())}),
      "Directed acyclic. topo is a predecessor chain over the order, first node "
      "self-loops.");
  add("articulation_points", Family::Graphs,
      concat(graph_inputs(false, false),
             {out("is_cut", N, mask()), hint("pi_h", N, pointer()),
              hint("color", N, categorical(kColors)), hint("d", N, scalar()),
              hint("low", N, scalar()), hint("is_cut_h", N, mask()), hint("u", N, mask_one())}),
      "Undirected. d and low are integer discovery times.");
  add("bridges", Family::Graphs,
      concat(graph_inputs(false, false),
             {out("is_bridge", E, mask()), hint("pi_h", N, pointer()),
              hint("color", N, categorical(kColors)), hint("d", N, scalar()),
              hint("low", N, scalar()), hint("is_bridge_h", E, mask()),
              hint("u", N, mask_one())}),
      "Undirected; bridge masks are symmetric.");
  add("scc_kosaraju", Family::Graphs,
      concat(graph_inputs(false, false),
             {out("scc", N, pointer()), hint("scc_h", N, pointer()), hint("pi_h", N, pointer()),
              hint("color", N, categorical(kColors)), hint("u", N, mask_one()),
              hint("phase", G, mask())}),
      "Directed. Output points every node at the smallest-position member of its "
      "component; scc_h uses the second-pass DFS root.");
  add("mst_kruskal", Family::Graphs,
      concat(graph_inputs(true, false),
             {out("in_mst", E, mask()), hint("in_mst_h", E, mask()), hint("uf", N, pointer()),
              hint("u", N, mask_one()), hint("v", N, mask_one())}),
      "Undirected; minimum spanning forest, symmetric mask. uf is the union-by-rank parent "
      "forest. One frame per edge in (w, u, v) order.");
  add("mst_prim", Family::Graphs,
      concat(graph_inputs(true, true),
             {out("pi", N, pointer()), hint("pi_h", N, pointer()), hint("key", N, scalar()),
              hint("mark", N, mask()), hint("in_queue", N, mask()), hint("u", N, mask_one())}),
      "Undirected; tree over the source's component, other nodes self-loop.");
  add("bellman_ford", Family::Graphs,
      concat(graph_inputs(true, true),
             {out("pi", N, pointer()), hint("pi_h", N, pointer()), hint("d", N, scalar()),
              hint("msk", N, mask())}),
      "Undirected. Synchronous relaxation rounds with early exit; msk = 0 encodes infinite "
      "distance (d then carried as 0).");
  add("dijkstra", Family::Graphs,
      concat(graph_inputs(true, true),
             {out("pi", N, pointer()), hint("pi_h", N, pointer()), hint("d", N, scalar()),
              hint("mark", N, mask()), hint("in_queue", N, mask()), hint("u", N, mask_one())}),
      "Undirected. One frame per extract-min.");
  add("dag_shortest_paths", Family::Graphs,
      concat(graph_inputs(true, true),
             {out("pi", N, pointer()), hint("pi_h", N, pointer()), hint("d", N, scalar()),
              hint("reach", N, mask()), hint("color", N, categorical(kColors)),
              hint("topo_h", N, pointer()), hint("topo_mask", N, mask()),
              hint("u", N, mask_one()), hint("phase", G, mask())}),
      "Directed acyclic (edges from lower to higher position). phase 0 = topological sort, "
      "1 = relaxation in topological order.");
  add("floyd_warshall", Family::Graphs,
      concat(graph_inputs(true, false),
             {out("Pi", E, pointer()), hint("Pi_h", E, pointer()), hint("D", E, scalar()),
              hint("msk", E, mask()), hint("k", N, mask_one())}),
      "Undirected. Pi[i, j] = predecessor of j on the shortest i -> j path; Pi[i, i] = i and "
      "unreachable j point to j. One frame per intermediate vertex.");

  add("naive_string_matcher", Family::Strings,
      concat(string_inputs("in_needle"),
             {out("match", N, mask_one()), hint("start", N, mask_one()),
              hint("hay_i", N, mask_one()), hint("needle_j", N, mask_one())}),
      "Haystack nodes first, then needle nodes. One frame per character comparison; match "
      "marks the haystack node where the first occurrence starts.");
  add("kmp_matcher", Family::Strings,
      concat(string_inputs("in_needle"),
             {out("match", N, mask_one()), hint("pi_h", N, pointer()), hint("i", N, mask_one()),
              hint("q", N, mask_one()), hint("phase", G, mask())}),
      "pi_h[j] points at needle node pi(j) - 1, or at itself when pi(j) = 0; haystack nodes "
      "self-loop. phase 0 = prefix function, 1 = scan. One frame per outer-loop step.");

  add("segments_intersect", Family::Geometry,
      concat(geometry_inputs(),
             {out("intersect", G, mask()), hint("dir", N, scalar()), hint("on_seg", N, mask())}),
      "Exactly four nodes: segment A = nodes 0-1, segment B = nodes 2-3. dir[k] is the "
      "orientation of endpoint k against the other segment.");
  add("graham_scan", Family::Geometry,
      concat(geometry_inputs(),
             {out("in_hull", N, mask()), hint("order_h", N, pointer()),
              hint("stack_h", N, pointer()), hint("in_stack", N, mask()),
              hint("top", N, mask_one()), hint("i", N, mask_one())}),
      "Anchor is the lowest-y (then lowest-x) point. order_h chains points by polar angle; "
      "stack_h points each stacked node at the one below it.");
  add("jarvis_march", Family::Geometry,
      concat(geometry_inputs(),
             {out("in_hull", N, mask()), hint("in_hull_h", N, mask()),
              hint("hull_h", N, pointer()), hint("cur", N, mask_one()),
              hint("cand", N, mask_one())}),
      "One frame per wrap step; the candidate sweep is compressed.");
  return r;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = build_registry();
  return entries;
}

}  // namespace

std::span<const std::string_view> algorithm_ids() {
  static const std::vector<std::string_view> ids = [] {
    std::vector<std::string_view> v;
    for (const auto& e : registry()) v.emplace_back(e.spec.algorithm_id);
    return v;
  }();
  return ids;
}

const std::vector<AlgorithmSpec>& all_specs() {
  static const std::vector<AlgorithmSpec> specs = [] {
    std::vector<AlgorithmSpec> v;
    for (const auto& e : registry()) v.push_back(e.spec);
    return v;
  }();
  return specs;
}

const AlgorithmSpec& get_spec(std::string_view algorithm_id) {
  for (const auto& spec : all_specs()) {
    if (spec.algorithm_id == algorithm_id) return spec;
  }
  throw Error(ErrorKind::UnknownAlgorithm, std::string(algorithm_id));
}

std::string_view spec_notes(std::string_view algorithm_id) {
  for (const auto& e : registry()) {
    if (e.spec.algorithm_id == algorithm_id) return e.notes;
  }
  return {};
}

std::vector<std::string> validate_spec(const AlgorithmSpec& spec) {
  std::vector<std::string> violations;
  std::set<std::string> names;
  bool has_input = false;
  bool has_output = false;
  for (const auto& p : spec.probes) {
    if (!names.insert(p.name).second) violations.push_back("duplicate probe name '" + p.name + "'");
    if (p.stage == Stage::Input) has_input = true;
    if (p.stage == Stage::Output) has_output = true;
    if (p.stage == Stage::Output && p.type.kind == ProbeKind::Scalar) {
      violations.push_back("output scalar forbidden: '" + p.name + "'");
    }
    if (p.type.kind == ProbeKind::Categorical && p.type.num_classes < 2) {
      violations.push_back("categorical probe '" + p.name + "' needs at least 2 classes");
    }
  }
  const ProbeSpec* position = spec.find("pos");
  if (position == nullptr || position->stage != Stage::Input ||
      position->location != Location::Node || position->type.kind != ProbeKind::Scalar) {
    violations.push_back("position probe missing");
  }
  if (!has_input) violations.push_back("no input probe");
  if (!has_output) violations.push_back("no output probe");
  return violations;
}

nlohmann::json spec_to_json(const AlgorithmSpec& spec) {
  nlohmann::json probes = nlohmann::json::array();
  for (const auto& p : spec.probes) {
    probes.push_back({{"name", p.name},
                      {"stage", to_string(p.stage)},
                      {"location", to_string(p.location)},
                      {"type", to_string(p.type.kind)},
                      {"num_classes", p.type.num_classes}});
  }
  return {{"algorithm_id", spec.algorithm_id},
          {"family", to_string(spec.family)},
          {"probes", std::move(probes)}};
}

AlgorithmSpec spec_from_json(const nlohmann::json& doc) {
  try {
    AlgorithmSpec spec;
    spec.algorithm_id = doc.at("algorithm_id").get<std::string>();
    spec.family = family_from_string(doc.at("family").get<std::string>());
    for (const auto& p : doc.at("probes")) {
      ProbeSpec probe;
      probe.name = p.at("name").get<std::string>();
      probe.stage = stage_from_string(p.at("stage").get<std::string>());
      probe.location = location_from_string(p.at("location").get<std::string>());
      probe.type.kind = probe_kind_from_string(p.at("type").get<std::string>());
      probe.type.num_classes = p.at("num_classes").get<int>();
      spec.probes.push_back(std::move(probe));
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed spec json: ") + e.what());
  }
}

nlohmann::json export_specs() {
  nlohmann::json algorithms = nlohmann::json::array();
  for (const auto& e : registry()) {
    auto doc = spec_to_json(e.spec);
    doc["notes"] = std::string(e.notes);
    algorithms.push_back(std::move(doc));
  }
  return {{"format_version", 1}, {"algorithms", std::move(algorithms)}};
}

}  // namespace algotrace
