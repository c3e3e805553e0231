#include "algotrace/probing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace algotrace {

const std::vector<double>& ProbeValue::scalars() const {
  if (const auto* v = std::get_if<std::vector<double>>(&data)) return *v;
  throw Error(ErrorKind::ShapeMismatch, "probe '" + name + "' does not carry scalars");
}

const std::vector<std::int32_t>& ProbeValue::ints() const {
  if (const auto* v = std::get_if<std::vector<std::int32_t>>(&data)) return *v;
  throw Error(ErrorKind::ShapeMismatch, "probe '" + name + "' does not carry integers");
}

const ProbeValue* find_value(const Frame& frame, std::string_view name) {
  auto it = std::find_if(frame.begin(), frame.end(),
                         [&](const ProbeValue& v) { return v.name == name; });
  return it == frame.end() ? nullptr : &*it;
}

const ProbeValue& value_of(const Frame& frame, std::string_view name) {
  if (const auto* v = find_value(frame, name)) return *v;
  throw Error(ErrorKind::UnknownProbe, std::string(name));
}

std::optional<PayloadIssue> check_payload(const ProbeSpec& spec, int n, const Payload& payload) {
  const std::size_t expected = value_size(spec.location, n);
  const bool is_scalar = spec.type.kind == ProbeKind::Scalar;
  if (is_scalar != std::holds_alternative<std::vector<double>>(payload)) {
    return PayloadIssue{ErrorKind::ShapeMismatch,
                        "'" + spec.name + "' payload has the wrong element type"};
  }
  const std::size_t size =
      std::visit([](const auto& v) { return v.size(); }, payload);
  if (size != expected) {
    return PayloadIssue{ErrorKind::ShapeMismatch, "'" + spec.name + "' expects " +
                                                      std::to_string(expected) + " entries, got " +
                                                      std::to_string(size)};
  }
  if (is_scalar) {
    const auto& v = std::get<std::vector<double>>(payload);
    if (!std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); })) {
      return PayloadIssue{ErrorKind::RangeViolation, "'" + spec.name + "' has a non-finite scalar"};
    }
    return std::nullopt;
  }
  const auto& v = std::get<std::vector<std::int32_t>>(payload);
  auto out_of = [&](std::int32_t hi) {
    return std::any_of(v.begin(), v.end(), [&](std::int32_t x) { return x < 0 || x >= hi; });
  };
  switch (spec.type.kind) {
    case ProbeKind::Mask:
      if (out_of(2)) return PayloadIssue{ErrorKind::RangeViolation, "'" + spec.name + "' mask outside {0,1}"};
      break;
    case ProbeKind::MaskOne:
      if (out_of(2)) {
        return PayloadIssue{ErrorKind::RangeViolation, "'" + spec.name + "' mask_one outside {0,1}"};
      }
      if (std::count(v.begin(), v.end(), 1) != 1) {
        return PayloadIssue{ErrorKind::RangeViolation,
                            "'" + spec.name + "' mask_one cardinality is not exactly one"};
      }
      break;
    case ProbeKind::Pointer:
      if (out_of(n)) {
        return PayloadIssue{ErrorKind::RangeViolation,
                            "'" + spec.name + "' pointer outside {0.." + std::to_string(n - 1) + "}"};
      }
      break;
    case ProbeKind::Categorical:
      if (out_of(spec.type.num_classes)) {
        return PayloadIssue{ErrorKind::RangeViolation,
                            "'" + spec.name + "' category outside {0.." +
                                std::to_string(spec.type.num_classes - 1) + "}"};
      }
      break;
    case ProbeKind::Scalar:
      break;
  }
  return std::nullopt;
}

TrajectoryBuilder::TrajectoryBuilder(const AlgorithmSpec& spec, int n, std::uint64_t seed)
    : spec_(&spec), n_(n), seed_(seed) {
  if (n < 1) throw Error(ErrorKind::EmptyInput, "trajectory needs at least one node");
  inputs_ = empty_frame(Stage::Input);
  outputs_ = empty_frame(Stage::Output);
}

TrajectoryBuilder::SlotFrame TrajectoryBuilder::empty_frame(Stage stage) const {
  SlotFrame frame;
  for (const ProbeSpec* p : spec_->of_stage(stage)) frame.push_back({p, std::nullopt});
  return frame;
}

void TrajectoryBuilder::require_live() const {
  if (consumed_) throw Error(ErrorKind::BuilderConsumed, "builder already finalized");
}

TrajectoryBuilder::SlotFrame& TrajectoryBuilder::frame_for(Stage stage) {
  switch (stage) {
    case Stage::Input: return inputs_;
    case Stage::Output: return outputs_;
    case Stage::Hint:
      if (hints_.empty()) {
        throw Error(ErrorKind::IncompleteFrame, "no hint frame open; call next_hint_frame first");
      }
      return hints_.back();
  }
  return inputs_;
}

void TrajectoryBuilder::push(Stage stage, std::string_view name, Payload payload) {
  require_live();
  const ProbeSpec* probe = spec_->find(name);
  if (probe == nullptr || probe->stage != stage) {
    throw Error(ErrorKind::UnknownProbe, std::string(to_string(stage)) + " probe '" +
                                             std::string(name) + "' not in spec " +
                                             spec_->algorithm_id);
  }
  if (auto issue = check_payload(*probe, n_, payload)) throw Error(issue->kind, issue->message);
  SlotFrame& frame = frame_for(stage);
  auto slot = std::find_if(frame.begin(), frame.end(), [&](const Slot& s) { return s.spec == probe; });
  if (slot->value) {
    throw Error(ErrorKind::DuplicateInFrame, "'" + std::string(name) + "' pushed twice in one frame");
  }
  slot->value = std::move(payload);
}

std::vector<std::string> TrajectoryBuilder::missing(const SlotFrame& frame) {
  std::vector<std::string> names;
  for (const auto& slot : frame) {
    if (!slot.value) names.push_back(slot.spec->name);
  }
  return names;
}

namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

void TrajectoryBuilder::next_hint_frame() {
  require_live();
  if (!hints_.empty()) {
    if (auto names = missing(hints_.back()); !names.empty()) {
      throw Error(ErrorKind::IncompleteFrame, "hint frame missing {" + join(names) + "}");
    }
  }
  hints_.push_back(empty_frame(Stage::Hint));
}

Frame TrajectoryBuilder::seal(SlotFrame& frame) {
  Frame out;
  out.reserve(frame.size());
  for (auto& slot : frame) out.push_back({slot.spec->name, std::move(*slot.value)});
  return out;
}

Trajectory TrajectoryBuilder::finalize() {
  require_live();
  if (hints_.empty()) throw Error(ErrorKind::IncompleteFrame, "no hint frame recorded");
  if (auto names = missing(hints_.back()); !names.empty()) {
    throw Error(ErrorKind::IncompleteFrame, "hint frame missing {" + join(names) + "}");
  }
  if (auto names = missing(inputs_); !names.empty()) {
    throw Error(ErrorKind::MissingProbe, "input " + join(names));
  }
  if (auto names = missing(outputs_); !names.empty()) {
    throw Error(ErrorKind::MissingProbe, "output " + join(names));
  }
  consumed_ = true;
  Trajectory traj;
  traj.algorithm_id = spec_->algorithm_id;
  traj.n = n_;
  traj.seed = seed_;
  traj.inputs = seal(inputs_);
  traj.outputs = seal(outputs_);
  traj.hints.reserve(hints_.size());
  for (auto& frame : hints_) traj.hints.push_back(seal(frame));
  hints_.clear();
  return traj;
}

namespace {

void check_frame(const Frame& frame, const AlgorithmSpec& spec, Stage stage, int n,
                 const std::string& where, std::vector<std::string>& out) {
  std::set<std::string> seen;
  for (const auto& value : frame) {
    const ProbeSpec* probe = spec.find(value.name);
    if (probe == nullptr || probe->stage != stage) {
      out.push_back(where + ": extra probe '" + value.name + "'");
      continue;
    }
    if (!seen.insert(value.name).second) {
      out.push_back(where + ": duplicate probe '" + value.name + "'");
      continue;
    }
    if (auto issue = check_payload(*probe, n, value.data)) {
      std::string message = issue->message;
      if (probe->type.kind == ProbeKind::MaskOne && message.find("cardinality") != std::string::npos) {
        message = "mask_one cardinality: " + message;
      }
      out.push_back(where + ": " + message);
    }
  }
  for (const ProbeSpec* probe : spec.of_stage(stage)) {
    if (!seen.contains(probe->name) && find_value(frame, probe->name) == nullptr) {
      out.push_back(where + ": missing " + std::string(to_string(stage)) + " '" + probe->name + "'");
    }
  }
}

}  // namespace

std::vector<std::string> check_against_spec(const Trajectory& traj, const AlgorithmSpec& spec) {
  std::vector<std::string> out;
  if (traj.algorithm_id != spec.algorithm_id) {
    out.push_back("algorithm id '" + traj.algorithm_id + "' does not match spec '" +
                  spec.algorithm_id + "'");
  }
  if (traj.n < 1) {
    out.push_back("node count must be positive");
    return out;
  }
  check_frame(traj.inputs, spec, Stage::Input, traj.n, "inputs", out);
  check_frame(traj.outputs, spec, Stage::Output, traj.n, "outputs", out);
  if (traj.hints.empty()) out.push_back("no hint frames");
  for (std::size_t t = 0; t < traj.hints.size(); ++t) {
    check_frame(traj.hints[t], spec, Stage::Hint, traj.n, "hint " + std::to_string(t), out);
  }
  return out;
}

std::vector<double> positions(int n) {
  std::vector<double> pos(static_cast<std::size_t>(n), 0.0);
  if (n > 1) {
    for (int i = 0; i < n; ++i) pos[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return pos;
}

std::vector<std::int32_t> one_hot(int index, int n) {
  std::vector<std::int32_t> v(static_cast<std::size_t>(n), 0);
  v.at(static_cast<std::size_t>(index)) = 1;
  return v;
}

std::vector<std::int32_t> identity_pointers(int n) {
  std::vector<std::int32_t> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

std::vector<std::int32_t> chain_pointers(std::span<const int> order, int n) {
  auto v = identity_pointers(n);
  for (std::size_t k = 1; k < order.size(); ++k) v[order[k]] = order[k - 1];
  return v;
}

}  // namespace algotrace
