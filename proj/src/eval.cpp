#include "algotrace/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "algotrace/spec_registry.hpp"

namespace algotrace {
namespace {

void require_same_shape(const Trajectory& truth, const Trajectory& pred) {
  if (truth.algorithm_id != pred.algorithm_id) {
    throw Error(ErrorKind::SchemaMismatch,
                "prediction for '" + pred.algorithm_id + "' scored against '" +
                    truth.algorithm_id + "'");
  }
  if (truth.n != pred.n) {
    throw Error(ErrorKind::SchemaMismatch, "prediction has n=" + std::to_string(pred.n) +
                                               ", truth has n=" + std::to_string(truth.n));
  }
}

const std::vector<std::int32_t>& predicted_ints(const Trajectory& pred, const ProbeSpec& p,
                                                std::size_t size) {
  const ProbeValue* v = find_value(pred.outputs, p.name);
  const auto* xs = v == nullptr ? nullptr : std::get_if<std::vector<std::int32_t>>(&v->data);
  if (xs == nullptr || xs->size() != size) {
    throw Error(ErrorKind::SchemaMismatch, "prediction lacks a well-formed '" + p.name + "'");
  }
  return *xs;
}

std::size_t argmax(const std::vector<std::int32_t>& xs) {
  return static_cast<std::size_t>(std::max_element(xs.begin(), xs.end()) - xs.begin());
}

void check_counts(std::size_t truth, std::size_t pred) {
  if (truth != pred) {
    throw Error(ErrorKind::CountMismatch, std::to_string(pred) + " predictions for " +
                                              std::to_string(truth) + " ground-truth records");
  }
}

}  // namespace

double f1_percent(const Confusion& c) {
  const double denominator = 2.0 * static_cast<double>(c.tp) + static_cast<double>(c.fp + c.fn);
  if (denominator == 0.0) return 100.0;
  return 100.0 * 2.0 * static_cast<double>(c.tp) / denominator;
}

Confusion output_confusion(const Trajectory& truth, const Trajectory& pred) {
  require_same_shape(truth, pred);
  const AlgorithmSpec& spec = get_spec(truth.algorithm_id);
  Confusion c;
  for (const auto* p : spec.of_stage(Stage::Output)) {
    const std::size_t size = value_size(p->location, truth.n);
    const auto& t = value_of(truth.outputs, p->name).ints();
    const auto& y = predicted_ints(pred, *p, size);
    switch (p->type.kind) {
      case ProbeKind::Mask:
        for (std::size_t i = 0; i < size; ++i) {
          const bool truth_pos = t[i] != 0;
          const bool pred_pos = y[i] != 0;
          if (truth_pos && pred_pos) ++c.tp;
          if (!truth_pos && pred_pos) ++c.fp;
          if (truth_pos && !pred_pos) ++c.fn;
        }
        break;
      case ProbeKind::MaskOne:
        if (argmax(t) == argmax(y)) {
          ++c.tp;
        } else {
          ++c.fp;
          ++c.fn;
        }
        break;
      case ProbeKind::Pointer:
      case ProbeKind::Categorical:
        for (std::size_t i = 0; i < size; ++i) {
          if (t[i] == y[i]) {
            ++c.tp;
          } else {
            ++c.fp;
            ++c.fn;
          }
        }
        break;
      case ProbeKind::Scalar:
        throw Error(ErrorKind::SchemaMismatch, "scalar output '" + p->name + "' cannot be scored");
    }
  }
  return c;
}

double micro_f1(std::span<const Trajectory> truth, std::span<const Trajectory> prediction) {
  check_counts(truth.size(), prediction.size());
  Confusion total;
  for (std::size_t i = 0; i < truth.size(); ++i) total += output_confusion(truth[i], prediction[i]);
  return f1_percent(total);
}

double multiclass_accuracy(std::span<const Trajectory> truth,
                           std::span<const Trajectory> prediction) {
  check_counts(truth.size(), prediction.size());
  std::uint64_t correct = 0;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    require_same_shape(truth[i], prediction[i]);
    const AlgorithmSpec& spec = get_spec(truth[i].algorithm_id);
    for (const auto* p : spec.of_stage(Stage::Output)) {
      if (p->type.kind == ProbeKind::Mask || p->type.kind == ProbeKind::Scalar) continue;
      const auto& t = value_of(truth[i].outputs, p->name).ints();
      const auto& y = predicted_ints(prediction[i], *p, t.size());
      if (p->type.kind == ProbeKind::MaskOne) {
        // One decision per probe: where the single marked node sits.
        const auto hit = std::find(t.begin(), t.end(), 1) - t.begin();
        const auto guess = std::max_element(y.begin(), y.end()) - y.begin();
        correct += hit == guess ? 1 : 0;
        ++total;
      } else {
        correct += static_cast<std::uint64_t>(
            std::inner_product(t.begin(), t.end(), y.begin(), std::int64_t{0}, std::plus<>(),
                               [](std::int32_t a, std::int32_t b) { return a == b ? 1 : 0; }));
        total += t.size();
      }
    }
  }
  return total == 0 ? 100.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

// --- score tables -------------------------------------------------------------

namespace {

std::vector<std::string> distinct(const std::vector<ScoreRow>& rows, std::string ScoreRow::*field) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& r : rows) {
    if (seen.insert(r.*field).second) out.push_back(r.*field);
  }
  return out;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& text, std::size_t line_no) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(value)) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": '" + text +
                                      "' is not a number");
  }
  return value;
}

}  // namespace

std::vector<std::string> ScoreTable::models() const { return distinct(rows, &ScoreRow::model); }
std::vector<std::string> ScoreTable::algorithms() const {
  return distinct(rows, &ScoreRow::algorithm);
}

ScoreTable read_score_csv(std::istream& in) {
  ScoreTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::set<std::pair<std::string, std::string>> keys;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_csv_line(line);
    if (!header_seen) {
      if (cells != std::vector<std::string>{"model", "algorithm", "mean", "std"}) {
        throw Error(ErrorKind::Parse, "expected header 'model,algorithm,mean,std'");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 4 || cells[0].empty() || cells[1].empty()) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected 4 columns");
    }
    ScoreRow row{cells[0], cells[1], parse_number(cells[2], line_no), parse_number(cells[3], line_no)};
    if (row.mean < 0.0 || row.mean > 100.0 || row.std < 0.0) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) +
                                        ": need 0 <= mean <= 100 and std >= 0");
    }
    if (!keys.emplace(row.model, row.algorithm).second) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": duplicate entry for " +
                                        row.model + " on " + row.algorithm);
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw Error(ErrorKind::Parse, "empty score table");
  return table;
}

ScoreTable read_score_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  return read_score_csv(in);
}

void write_score_csv(std::ostream& out, const ScoreTable& table) {
  out << "model,algorithm,mean,std\n";
  for (const auto& r : table.rows) {
    std::ostringstream mean, std;
    mean.precision(17);
    std.precision(17);
    mean << r.mean;
    std << r.std;
    out << r.model << ',' << r.algorithm << ',' << mean.str() << ',' << std.str() << '\n';
  }
}

char to_char(Wtl label) {
  switch (label) {
    case Wtl::Win: return 'W';
    case Wtl::Tie: return 'T';
    case Wtl::Loss: return 'L';
  }
  return '?';
}

WtlResult win_tie_loss(const ScoreTable& table) {
  WtlResult result;
  result.models = table.models();
  result.algorithms = table.algorithms();
  for (const auto& m : result.models) result.counts[m] = {};

  for (const auto& algorithm : result.algorithms) {
    std::vector<const ScoreRow*> rows;
    for (const auto& r : table.rows) {
      if (r.algorithm == algorithm) rows.push_back(&r);
    }
    if (rows.size() < 2) {
      throw Error(ErrorKind::SingleModel, "'" + algorithm + "' has fewer than two models");
    }
    auto outperforms = [](const ScoreRow& a, const ScoreRow& b) { return a.mean - a.std > b.mean; };
    for (const auto* a : rows) {
      bool beats_all = true;
      bool beaten = false;
      for (const auto* b : rows) {
        if (a == b) continue;
        beats_all = beats_all && outperforms(*a, *b);
        beaten = beaten || outperforms(*b, *a);
      }
      const Wtl label = beats_all ? Wtl::Win : beaten ? Wtl::Loss : Wtl::Tie;
      result.labels[{algorithm, a->model}] = label;
      auto& c = result.counts[a->model];
      (label == Wtl::Win ? c.wins : label == Wtl::Tie ? c.ties : c.losses) += 1;
    }
  }
  return result;
}

}  // namespace algotrace
