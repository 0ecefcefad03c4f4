#pragma once

#include "divcurve/graph.hpp"

namespace divcurve {

// Exact isomorphism test by backtracking over degree-compatible mappings.
// Guarded to n <= 10; this is a test oracle, not a scalable algorithm.
bool is_isomorphic_small(const Graph& g, const Graph& h);

}  // namespace divcurve
