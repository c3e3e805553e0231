#pragma once

#include <cstdint>
#include <vector>

#include "algotrace/probing.hpp"

namespace algotrace {

/// Matrix i (1 <= i < p.size()) has shape p[i-1] x p[i].
struct ChainInstance {
  std::vector<double> p;
  std::uint64_t seed = 0;
};

/// Two strings over the alphabet {0..3}; x occupies the first nodes.
struct LcsInstance {
  std::vector<std::int32_t> x, y;
  std::uint64_t seed = 0;
};

/// Keys 1..m with probabilities p[0..m-1] and dummy probabilities q[0..m].
/// Node storage pads p with a trailing zero so both arrays span m + 1 nodes.
struct ObstInstance {
  std::vector<double> p, q;
  std::uint64_t seed = 0;
};

struct MatchInstance {
  std::vector<std::int32_t> haystack, needle;
  std::uint64_t seed = 0;
};

struct PointInstance {
  std::vector<double> x, y;
  std::uint64_t seed = 0;
};

Trajectory matrix_chain_trajectory(const ChainInstance& instance);
Trajectory lcs_trajectory(const LcsInstance& instance);
Trajectory optimal_bst_trajectory(const ObstInstance& instance);

enum class MatcherKind { Naive, Kmp };
/// Throws PreconditionViolated when the needle does not occur in the haystack.
Trajectory matcher_trajectory(MatcherKind kind, const MatchInstance& instance);

Trajectory segments_trajectory(const PointInstance& instance);
enum class HullKind { Graham, Jarvis };
/// Throws DegenerateGeometry when three points are collinear.
Trajectory hull_trajectory(HullKind kind, const PointInstance& instance);

/// Textbook orientation of c relative to the directed line a -> b.
double orientation(double ax, double ay, double bx, double by, double cx, double cy);

}  // namespace algotrace
