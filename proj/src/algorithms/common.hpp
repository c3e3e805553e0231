#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "algotrace/probing.hpp"
#include "algotrace/spec_registry.hpp"

namespace algotrace::detail {

using Ints = std::vector<std::int32_t>;
using Reals = std::vector<double>;

struct NamedPayload {
  std::string_view name;
  Payload value;
};

/// Opens a new hint frame and fills it.
inline void emit(TrajectoryBuilder& b, std::vector<NamedPayload> values) {
  b.next_hint_frame();
  for (auto& v : values) b.push(Stage::Hint, v.name, std::move(v.value));
}

inline void push_inputs(TrajectoryBuilder& b, std::vector<NamedPayload> values) {
  for (auto& v : values) b.push(Stage::Input, v.name, std::move(v.value));
}

inline void push_outputs(TrajectoryBuilder& b, std::vector<NamedPayload> values) {
  for (auto& v : values) b.push(Stage::Output, v.name, std::move(v.value));
}

inline Reals graph_scalar(double x) { return Reals{x}; }
inline Ints graph_int(std::int32_t x) { return Ints{x}; }

/// Row-major n x n matrix view helper.
inline std::size_t at(int i, int j, int n) {
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j);
}

}  // namespace algotrace::detail
