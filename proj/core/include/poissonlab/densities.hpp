#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "poissonlab/gridfn.hpp"
#include "poissonlab/mc.hpp"

namespace poissonlab {

/// Names accepted by builtin_density.
const std::vector<std::string>& builtin_density_names();

/// Exact cell averages at `resolution` of:
///   uniform  : 1
///   halfstep : 2 on [0, 1/2), 0 elsewhere
///   tent     : min(4x, 4(1-x))
///   withzero : 0 on [0.4, 0.6), 1.25 elsewhere
Density builtin_density(std::string_view name, std::size_t resolution);

/// Random density for property campaigns: i.i.d. exponential cell heights,
/// each cell zeroed with probability `zero_probability` (at least one cell
/// stays positive), then normalized.
Density random_density(Rng& rng, std::size_t resolution, double zero_probability = 0.2);

/// Random real-valued function: a random walk with a random step scale plus
/// occasional jumps; values may be negative.
GridFunction random_grid_function(Rng& rng, std::size_t resolution);

}  // namespace poissonlab
