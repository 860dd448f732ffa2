#pragma once

#include "muskat/core.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace muskat {

// Named initial configurations, all mirror-symmetric about the origin
// except "offset".
//   two_bump   f0: bump at 0 (half-width 1.5); g0: bumps at ±1.25 (half-width 0.75)
//   equal      f0 = g0 = bump at 0 (half-width 1.5)
//   offset     f0: bump at -0.75; g0: bump at +0.75 (half-width 1.25)
//   barenblatt f0 = g0 = PME source profile at t = 0 with offset 1
InitialData make_benchmark(std::string_view name, const Grid& grid);

const std::vector<std::string>& benchmark_names();

// Smooth compactly supported bump (1 - |x-c|²/w²)₊², sampled at cell centers.
Field bump(const Grid& grid, double center_x, double half_width);

}  // namespace muskat
