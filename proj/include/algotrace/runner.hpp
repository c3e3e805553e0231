#pragma once

#include <cstdint>
#include <string_view>

#include "algotrace/probing.hpp"
#include "algotrace/samplers.hpp"

namespace algotrace {

/// Decodes an input frame (every INPUT probe of the algorithm, in spec order)
/// into the algorithm's native instance and runs it. The node count is taken
/// from the `pos` probe. Layout problems raise ShapeMismatch or
/// PreconditionViolated.
Trajectory run_algorithm(std::string_view algorithm_id, const Frame& inputs, std::uint64_t seed);

/// Samples the inputs for `cfg` and runs the algorithm on them.
Trajectory generate_trajectory(const SamplerConfig& cfg);

}  // namespace algotrace
