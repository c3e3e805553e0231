#include "algotrace/algorithms/dp_strings_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "algotrace/samplers.hpp"
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

[[noreturn]] void precondition(const std::string& message) {
  throw Error(ErrorKind::PreconditionViolated, message);
}

Ints zeros_i(std::size_t count) { return Ints(count, 0); }
Reals zeros_r(std::size_t count) { return Reals(count, 0.0); }

std::size_t cells(int n) { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }

// Two strings laid out back to back: the first `first_len` nodes, then the rest.
void push_string_inputs(TrajectoryBuilder& b, const Ints& chars, int first_len,
                        std::string_view membership) {
  const int n = static_cast<int>(chars.size());
  Ints member(chars.size(), 0);
  Ints pred = identity_pointers(n);
  for (int i = 0; i < n; ++i) {
    member[i] = i >= first_len ? 1 : 0;
    if (i != 0 && i != first_len) pred[i] = i - 1;
  }
  push_inputs(b, {{"pos", positions(n)},
                  {"ch", chars},
                  {membership, std::move(member)},
                  {"str_pred", std::move(pred)}});
}

void check_alphabet(const Ints& chars) {
  for (auto c : chars) {
    if (c < 0 || c > 3) precondition("characters must lie in {0..3}");
  }
}

}  // namespace

Trajectory matrix_chain_trajectory(const ChainInstance& inst) {
  const int n = static_cast<int>(inst.p.size());
  if (n < 2) precondition("matrix_chain_order needs at least one matrix (two dimensions)");
  for (double d : inst.p) {
    if (!(d > 0.0)) precondition("matrix dimensions must be positive");
  }
  TrajectoryBuilder b(get_spec("matrix_chain_order"), n, inst.seed);
  push_inputs(b, {{"pos", positions(n)}, {"p", inst.p}});

  Reals m = zeros_r(cells(n));
  Ints s = zeros_i(cells(n));
  Ints msk = zeros_i(cells(n));
  emit(b, {{"s_h", s}, {"m", m}, {"msk", msk}});

  const int matrices = n - 1;
  for (int len = 2; len <= matrices; ++len) {
    for (int i = 1; i + len - 1 <= matrices; ++i) {
      const int j = i + len - 1;
      double best = 0.0;
      int split = -1;
      for (int k = i; k < j; ++k) {
        const double cost =
            m[at(i, k, n)] + m[at(k + 1, j, n)] + inst.p[i - 1] * inst.p[k] * inst.p[j];
        if (split < 0 || cost < best) {
          best = cost;
          split = k;
        }
      }
      m[at(i, j, n)] = best;
      s[at(i, j, n)] = split;
      msk[at(i, j, n)] = 1;
    }
    emit(b, {{"s_h", s}, {"m", m}, {"msk", msk}});
  }
  push_outputs(b, {{"s", s}});
  return b.finalize();
}

Trajectory lcs_trajectory(const LcsInstance& inst) {
  const int la = static_cast<int>(inst.x.size());
  const int lb = static_cast<int>(inst.y.size());
  if (la < 1 || lb < 1) precondition("lcs_length needs two non-empty strings");
  check_alphabet(inst.x);
  check_alphabet(inst.y);
  const int n = la + lb;
  TrajectoryBuilder b(get_spec("lcs_length"), n, inst.seed);
  Ints chars = inst.x;
  chars.insert(chars.end(), inst.y.begin(), inst.y.end());
  push_string_inputs(b, chars, la, "in_second");

  // Full (la + 1) x (lb + 1) table; only cells with i, j >= 1 are exposed.
  std::vector<std::vector<int>> c(la + 1, std::vector<int>(lb + 1, 0));
  Ints dir = zeros_i(cells(n));
  Reals len = zeros_r(cells(n));
  Ints msk = zeros_i(cells(n));
  emit(b, {{"b_h", dir}, {"c", len}, {"msk", msk}});

  for (int diag = 2; diag <= la + lb; ++diag) {
    for (int i = std::max(1, diag - lb); i <= std::min(la, diag - 1); ++i) {
      const int j = diag - i;
      const auto cell = at(i - 1, la + j - 1, n);
      if (inst.x[i - 1] == inst.y[j - 1]) {
        c[i][j] = c[i - 1][j - 1] + 1;
        dir[cell] = 0;
      } else if (c[i - 1][j] >= c[i][j - 1]) {
        c[i][j] = c[i - 1][j];
        dir[cell] = 1;
      } else {
        c[i][j] = c[i][j - 1];
        dir[cell] = 2;
      }
      len[cell] = c[i][j];
      msk[cell] = 1;
    }
    emit(b, {{"b_h", dir}, {"c", len}, {"msk", msk}});
  }
  push_outputs(b, {{"b", dir}});
  return b.finalize();
}

Trajectory optimal_bst_trajectory(const ObstInstance& inst) {
  const int keys = static_cast<int>(inst.p.size());
  if (keys < 1) precondition("optimal_bst needs at least one key");
  if (inst.q.size() != inst.p.size() + 1) precondition("optimal_bst needs m + 1 dummy weights");
  double total = 0.0;
  for (double v : inst.p) {
    if (!(v >= 0.0)) precondition("probabilities must be non-negative");
    total += v;
  }
  for (double v : inst.q) {
    if (!(v >= 0.0)) precondition("probabilities must be non-negative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) precondition("probabilities must sum to 1");

  const int n = keys + 1;
  TrajectoryBuilder b(get_spec("optimal_bst"), n, inst.seed);
  Reals p_nodes = inst.p;
  p_nodes.push_back(0.0);
  push_inputs(b, {{"pos", positions(n)}, {"p", p_nodes}, {"q", inst.q}});

  Reals e = zeros_r(cells(n));
  Reals w = zeros_r(cells(n));
  Ints root = zeros_i(cells(n));
  Ints msk = zeros_i(cells(n));
  for (int a = 0; a < n; ++a) {
    e[at(a, a, n)] = inst.q[a];
    w[at(a, a, n)] = inst.q[a];
  }
  emit(b, {{"root_h", root}, {"e", e}, {"w", w}, {"msk", msk}});

  for (int span = 1; span <= keys; ++span) {
    for (int a = 0; a + span < n; ++a) {
      const int z = a + span;
      const double weight = w[at(a, z - 1, n)] + inst.p[z - 1] + inst.q[z];
      double best = 0.0;
      int best_r = -1;
      for (int r = a + 1; r <= z; ++r) {
        const double cost = e[at(a, r - 1, n)] + e[at(r, z, n)] + weight;
        if (best_r < 0 || cost < best) {
          best = cost;
          best_r = r;
        }
      }
      w[at(a, z, n)] = weight;
      e[at(a, z, n)] = best;
      root[at(a, z, n)] = best_r - 1;
      msk[at(a, z, n)] = 1;
    }
    emit(b, {{"root_h", root}, {"e", e}, {"w", w}, {"msk", msk}});
  }
  push_outputs(b, {{"root", root}});
  return b.finalize();
}

namespace {

struct MatchLayout {
  int h, m, n;
  Ints chars;
};

MatchLayout layout(const MatchInstance& inst) {
  MatchLayout l{static_cast<int>(inst.haystack.size()), static_cast<int>(inst.needle.size()), 0, {}};
  if (l.m < 1) precondition("needle must be non-empty");
  if (l.h < l.m) precondition("needle longer than haystack");
  check_alphabet(inst.haystack);
  check_alphabet(inst.needle);
  l.n = l.h + l.m;
  l.chars = inst.haystack;
  l.chars.insert(l.chars.end(), inst.needle.begin(), inst.needle.end());
  return l;
}

Trajectory naive_matcher(const MatchInstance& inst) {
  const auto l = layout(inst);
  TrajectoryBuilder b(get_spec("naive_string_matcher"), l.n, inst.seed);
  push_string_inputs(b, l.chars, l.h, "in_needle");
  for (int s = 0; s + l.m <= l.h; ++s) {
    for (int j = 0; j < l.m; ++j) {
      emit(b, {{"start", one_hot(s, l.n)},
               {"hay_i", one_hot(s + j, l.n)},
               {"needle_j", one_hot(l.h + j, l.n)}});
      if (inst.haystack[s + j] != inst.needle[j]) break;
      if (j + 1 == l.m) {
        push_outputs(b, {{"match", one_hot(s, l.n)}});
        return b.finalize();
      }
    }
  }
  precondition("needle does not occur in the haystack");
}

Trajectory kmp_matcher(const MatchInstance& inst) {
  const auto l = layout(inst);
  const auto& P = inst.needle;
  const auto& T = inst.haystack;
  TrajectoryBuilder b(get_spec("kmp_matcher"), l.n, inst.seed);
  push_string_inputs(b, l.chars, l.h, "in_needle");

  // prefix[q] for q = 1..m, 1-based as in the textbook.
  std::vector<int> prefix(static_cast<std::size_t>(l.m) + 1, 0);
  Ints pi_h = identity_pointers(l.n);
  std::int32_t phase = 0;
  auto needle_node = [&](int q) { return l.h + std::min(q, l.m - 1); };
  auto record = [&](int i_node, int q) {
    emit(b, {{"pi_h", pi_h},
             {"i", one_hot(i_node, l.n)},
             {"q", one_hot(needle_node(q), l.n)},
             {"phase", graph_int(phase)}});
  };
  record(l.h, 0);

  int k = 0;
  for (int q = 2; q <= l.m; ++q) {
    while (k > 0 && P[k] != P[q - 1]) k = prefix[k];
    if (P[k] == P[q - 1]) ++k;
    prefix[q] = k;
    if (k > 0) pi_h[l.h + q - 1] = l.h + k - 1;
    record(l.h + q - 1, k);
  }

  phase = 1;
  int q = 0;
  for (int i = 1; i <= l.h; ++i) {
    while (q > 0 && P[q] != T[i - 1]) q = prefix[q];
    if (P[q] == T[i - 1]) ++q;
    record(i - 1, q);
    if (q == l.m) {
      push_outputs(b, {{"match", one_hot(i - l.m, l.n)}});
      return b.finalize();
    }
  }
  precondition("needle does not occur in the haystack");
}

}  // namespace

Trajectory matcher_trajectory(MatcherKind kind, const MatchInstance& instance) {
  return kind == MatcherKind::Naive ? naive_matcher(instance) : kmp_matcher(instance);
}

double orientation(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

namespace {

struct Points {
  const Reals& x;
  const Reals& y;
  [[nodiscard]] double orient(int a, int b, int c) const {
    return orientation(x[a], y[a], x[b], y[b], x[c], y[c]);
  }
  [[nodiscard]] bool on_segment(int a, int b, int c) const {
    return std::min(x[a], x[b]) <= x[c] && x[c] <= std::max(x[a], x[b]) &&
           std::min(y[a], y[b]) <= y[c] && y[c] <= std::max(y[a], y[b]);
  }
};

int checked_points(const PointInstance& inst) {
  if (inst.x.size() != inst.y.size()) precondition("x and y lengths differ");
  return static_cast<int>(inst.x.size());
}

TrajectoryBuilder point_builder(std::string_view id, const PointInstance& inst, int n) {
  TrajectoryBuilder b(get_spec(id), n, inst.seed);
  push_inputs(b, {{"pos", positions(n)}, {"x", inst.x}, {"y", inst.y}});
  return b;
}

void require_general_position(const Points& pts, int n) {
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      for (int c = b + 1; c < n; ++c) {
        if (std::abs(pts.orient(a, b, c)) <= kCollinearTolerance) {
          throw Error(ErrorKind::DegenerateGeometry,
                      "points " + std::to_string(a) + ", " + std::to_string(b) + ", " +
                          std::to_string(c) + " are collinear");
        }
      }
    }
  }
}

int lowest_point(const Points& pts, int n) {
  int anchor = 0;
  for (int i = 1; i < n; ++i) {
    if (pts.y[i] < pts.y[anchor] || (pts.y[i] == pts.y[anchor] && pts.x[i] < pts.x[anchor])) {
      anchor = i;
    }
  }
  return anchor;
}

Trajectory graham_scan(const PointInstance& inst) {
  const int n = checked_points(inst);
  if (n < 3) precondition("a hull needs at least three points");
  const Points pts{inst.x, inst.y};
  require_general_position(pts, n);
  auto b = point_builder("graham_scan", inst, n);

  const int anchor = lowest_point(pts, n);
  std::vector<int> order;
  for (int i = 0; i < n; ++i) {
    if (i != anchor) order.push_back(i);
  }
  // Every other point lies above the anchor, so a left turn means a smaller angle.
  std::sort(order.begin(), order.end(),
            [&](int a, int c) { return pts.orient(anchor, a, c) > 0; });
  order.insert(order.begin(), anchor);
  const Ints order_h = chain_pointers(order, n);

  std::vector<int> stack{order[0], order[1], order[2]};
  auto record = [&](int i) {
    Ints in_stack(static_cast<std::size_t>(n), 0);
    for (int v : stack) in_stack[v] = 1;
    emit(b, {{"order_h", order_h},
             {"stack_h", chain_pointers(stack, n)},
             {"in_stack", std::move(in_stack)},
             {"top", one_hot(stack.back(), n)},
             {"i", one_hot(i, n)}});
  };
  record(order[2]);
  for (int k = 3; k < n; ++k) {
    const int p = order[k];
    while (stack.size() >= 2 && pts.orient(stack[stack.size() - 2], stack.back(), p) <= 0) {
      stack.pop_back();
    }
    stack.push_back(p);
    record(p);
  }
  Ints hull(static_cast<std::size_t>(n), 0);
  for (int v : stack) hull[v] = 1;
  push_outputs(b, {{"in_hull", hull}});
  return b.finalize();
}

Trajectory jarvis_march(const PointInstance& inst) {
  const int n = checked_points(inst);
  if (n < 3) precondition("a hull needs at least three points");
  const Points pts{inst.x, inst.y};
  require_general_position(pts, n);
  auto b = point_builder("jarvis_march", inst, n);

  const int anchor = lowest_point(pts, n);
  Ints in_hull(static_cast<std::size_t>(n), 0);
  Ints hull_h = identity_pointers(n);
  in_hull[anchor] = 1;
  auto record = [&](int cur, int cand) {
    emit(b, {{"in_hull_h", in_hull},
             {"hull_h", hull_h},
             {"cur", one_hot(cur, n)},
             {"cand", one_hot(cand, n)}});
  };
  record(anchor, anchor);

  int cur = anchor;
  for (int step = 0; step < n; ++step) {
    int cand = cur == 0 ? 1 : 0;
    for (int q = 0; q < n; ++q) {
      if (q == cur || q == cand) continue;
      if (pts.orient(cur, cand, q) < 0) cand = q;  // q is clockwise of cand: wrap tighter
    }
    if (cand != anchor) {
      in_hull[cand] = 1;
      hull_h[cand] = cur;
    }
    record(cur, cand);
    if (cand == anchor) break;
    cur = cand;
  }
  push_outputs(b, {{"in_hull", in_hull}});
  return b.finalize();
}

}  // namespace

Trajectory segments_trajectory(const PointInstance& inst) {
  const int n = checked_points(inst);
  if (n != 4) precondition("segments_intersect takes exactly four endpoints");
  const Points pts{inst.x, inst.y};
  auto b = point_builder("segments_intersect", inst, n);

  Reals dir(4, 0.0);
  Ints on_seg(4, 0);
  emit(b, {{"dir", dir}, {"on_seg", on_seg}});
  dir[0] = pts.orient(2, 3, 0);
  dir[1] = pts.orient(2, 3, 1);
  dir[2] = pts.orient(0, 1, 2);
  dir[3] = pts.orient(0, 1, 3);
  emit(b, {{"dir", dir}, {"on_seg", on_seg}});
  on_seg[0] = dir[0] == 0.0 && pts.on_segment(2, 3, 0);
  on_seg[1] = dir[1] == 0.0 && pts.on_segment(2, 3, 1);
  on_seg[2] = dir[2] == 0.0 && pts.on_segment(0, 1, 2);
  on_seg[3] = dir[3] == 0.0 && pts.on_segment(0, 1, 3);
  emit(b, {{"dir", dir}, {"on_seg", on_seg}});

  auto straddles = [](double a, double c) { return (a > 0 && c < 0) || (a < 0 && c > 0); };
  const bool hit = (straddles(dir[0], dir[1]) && straddles(dir[2], dir[3])) ||
                   std::any_of(on_seg.begin(), on_seg.end(), [](auto v) { return v != 0; });
  push_outputs(b, {{"intersect", graph_int(hit ? 1 : 0)}});
  return b.finalize();
}

Trajectory hull_trajectory(HullKind kind, const PointInstance& instance) {
  return kind == HullKind::Graham ? graham_scan(instance) : jarvis_march(instance);
}

}  // namespace algotrace
