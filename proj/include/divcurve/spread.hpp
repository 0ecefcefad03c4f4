#pragma once

#include <vector>

#include "divcurve/dist_matrix.hpp"

namespace divcurve {

// Spread of a finite metric space: sum over rows x of 1 / sum_y exp(-d(x,y)).
// exp(-inf) contributes 0, so disconnected graphs need no special casing. For
// genuine distance matrices the result lies in [1, n]; verbatim heat-kernel
// tables may fall outside. Sums run compensated in value-sorted order, so the
// result is bit-stable and exactly permutation invariant.
double spread(const DistMatrix& d);

// Spread of the same points under the metric scaled by t, per grid point.
std::vector<double> spread_function(const DistMatrix& d, const std::vector<double>& ts);

// Default grid: 20 evenly spaced values of t in [1, 5].
std::vector<double> default_spread_function_grid();

}  // namespace divcurve
