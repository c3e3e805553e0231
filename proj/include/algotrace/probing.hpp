#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "algotrace/error.hpp"
#include "algotrace/probe.hpp"

namespace algotrace {

/// Scalars travel as 64-bit reals; every other probe type as small integers.
using Payload = std::variant<std::vector<double>, std::vector<std::int32_t>>;

struct ProbeValue {
  std::string name;
  Payload data;

  [[nodiscard]] const std::vector<double>& scalars() const;
  [[nodiscard]] const std::vector<std::int32_t>& ints() const;

  friend bool operator==(const ProbeValue&, const ProbeValue&) = default;
};

/// One value per probe of a stage, kept in spec order.
using Frame = std::vector<ProbeValue>;

const ProbeValue* find_value(const Frame& frame, std::string_view name);
const ProbeValue& value_of(const Frame& frame, std::string_view name);

/// One algorithm run: a single input and output snapshot around T >= 1 hint frames.
struct Trajectory {
  std::string algorithm_id;
  int n = 0;
  std::uint64_t seed = 0;
  Frame inputs;
  std::vector<Frame> hints;
  Frame outputs;

  [[nodiscard]] std::size_t length() const { return hints.size(); }
  [[nodiscard]] const ProbeValue& input(std::string_view name) const { return value_of(inputs, name); }
  [[nodiscard]] const ProbeValue& output(std::string_view name) const {
    return value_of(outputs, name);
  }
  [[nodiscard]] const ProbeValue& hint(std::size_t t, std::string_view name) const {
    return value_of(hints.at(t), name);
  }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

struct PayloadIssue {
  ErrorKind kind;
  std::string message;
};

/// Shape and range check of one payload against its probe spec for `n` nodes.
std::optional<PayloadIssue> check_payload(const ProbeSpec& spec, int n, const Payload& payload);

/// Collects probe values during an instrumented run. Hint frames are delimited
/// explicitly with next_hint_frame(); the first call opens frame 0.
class TrajectoryBuilder {
 public:
  TrajectoryBuilder(const AlgorithmSpec& spec, int n, std::uint64_t seed = 0);

  void push(Stage stage, std::string_view name, Payload payload);
  void next_hint_frame();
  /// Consumes the builder; a second call throws BuilderConsumed.
  Trajectory finalize();

  [[nodiscard]] int nodes() const { return n_; }
  [[nodiscard]] std::size_t frame_count() const { return hints_.size(); }

 private:
  struct Slot {
    const ProbeSpec* spec;
    std::optional<Payload> value;
  };
  using SlotFrame = std::vector<Slot>;

  SlotFrame empty_frame(Stage stage) const;
  SlotFrame& frame_for(Stage stage);
  void require_live() const;
  static std::vector<std::string> missing(const SlotFrame& frame);
  static Frame seal(SlotFrame& frame);

  const AlgorithmSpec* spec_;
  int n_;
  std::uint64_t seed_;
  bool consumed_ = false;
  SlotFrame inputs_;
  SlotFrame outputs_;
  std::vector<SlotFrame> hints_;
};

/// Empty iff every spec probe is present with the right stage, shape and range,
/// no extra probes exist, and T >= 1.
std::vector<std::string> check_against_spec(const Trajectory& traj, const AlgorithmSpec& spec);

// Payload helpers shared by the instrumented algorithms.
std::vector<double> positions(int n);
std::vector<std::int32_t> one_hot(int index, int n);
std::vector<std::int32_t> identity_pointers(int n);
/// Predecessor encoding of an ordering: order[0] self-loops, order[k] -> order[k-1].
std::vector<std::int32_t> chain_pointers(std::span<const int> order, int n);

}  // namespace algotrace
