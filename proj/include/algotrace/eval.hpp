#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "algotrace/probing.hpp"

namespace algotrace {

/// Pooled confusion counts over OUTPUT elements.
struct Confusion {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  Confusion& operator+=(const Confusion& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
};

/// Percent F1 from pooled counts; 100 when there is nothing to score.
double f1_percent(const Confusion& c);

/// Counts for one record. MASK probes score class 1 as positive; pointer,
/// categorical and MASK_ONE values are single-label, so a miss costs one FP
/// and one FN. MASK_ONE is compared through its argmax.
Confusion output_confusion(const Trajectory& truth, const Trajectory& prediction);

/// Micro-F1 (percent) over every OUTPUT element of every record. Raises
/// CountMismatch for differing record counts and SchemaMismatch when a
/// prediction does not match the ground-truth probe layout.
double micro_f1(std::span<const Trajectory> truth, std::span<const Trajectory> prediction);

/// Exact-match accuracy (percent) over the single-label OUTPUT elements only.
/// Computed independently of micro_f1 so the two can cross-check each other.
double multiclass_accuracy(std::span<const Trajectory> truth,
                           std::span<const Trajectory> prediction);

struct ScoreRow {
  std::string model;
  std::string algorithm;
  double mean = 0.0;
  double std = 0.0;
};

struct ScoreTable {
  std::vector<ScoreRow> rows;

  /// Distinct names in order of first appearance.
  [[nodiscard]] std::vector<std::string> models() const;
  [[nodiscard]] std::vector<std::string> algorithms() const;
};

/// CSV with header `model,algorithm,mean,std`. Malformed input raises Parse.
ScoreTable read_score_csv(std::istream& in);
ScoreTable read_score_csv(const std::string& path);
void write_score_csv(std::ostream& out, const ScoreTable& table);

enum class Wtl : std::uint8_t { Win, Tie, Loss };
char to_char(Wtl label);

struct WtlCounts {
  int wins = 0, ties = 0, losses = 0;
  friend bool operator==(const WtlCounts&, const WtlCounts&) = default;
};

struct WtlResult {
  std::vector<std::string> models;
  std::vector<std::string> algorithms;
  /// (algorithm, model) -> label.
  std::map<std::pair<std::string, std::string>, Wtl> labels;
  std::map<std::string, WtlCounts> counts;
};

/// Model A outperforms B on an algorithm iff mean_A - std_A > mean_B. A model
/// wins if it outperforms every other model, loses if any model outperforms
/// it, and ties otherwise. Raises SingleModel when an algorithm has fewer
/// than two models.
WtlResult win_tie_loss(const ScoreTable& table);

}  // namespace algotrace
