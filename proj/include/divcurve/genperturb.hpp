#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "divcurve/curve.hpp"
#include "divcurve/graph.hpp"
#include "divcurve/rng.hpp"

namespace divcurve {

// Random-graph models. RP and SBM are planted partitions with near-equal
// communities (sizes differ by at most one); defaults follow the reference
// parameterisation (RP: 3 communities, 0.9/0.1; SBM: 4 communities, 0.8/0.05).
struct ErModel {
    double p = 0.75;
};
struct RpModel {
    int communities = 3;
    double p_in = 0.9;
    double p_out = 0.1;
};
struct RgModel {
    double radius = 0.25;
    bool keep_coordinates = false;  // store the sampled points as features
};
struct SbmModel {
    int communities = 4;
    double p_in = 0.8;
    double p_out = 0.05;
};
using GraphModel = std::variant<ErModel, RpModel, RgModel, SbmModel>;

GraphModel model_from_string(const std::string& name);
std::string model_name(const GraphModel& model);

// Seed-deterministic sampling; the label field is set to the class id.
Graph generate_graph(const GraphModel& model, int n, Rng& rng,
                     std::optional<int> label = std::nullopt);

enum class PerturbKind { kAddEdge, kRemoveEdge, kRewireEdge, kSwapEdge };

PerturbKind perturb_kind_from_string(const std::string& name);
std::string perturb_kind_name(PerturbKind k);

struct PerturbationScenario {
    PerturbKind kind = PerturbKind::kAddEdge;
    double degree = 0.0;  // in [0, 1]
};

struct PerturbStats {
    int requested = 0;
    int applied = 0;  // < requested when the edit pool ran dry or retries failed
};

// Consecutive single-edge edits with post-edit state visible to the next
// edit. Degree semantics: add = fraction of the absent pairs; remove =
// fraction of the edges removable without disconnecting (m - n + c), each
// pick uniform among current non-bridge edges; rewire = fraction of edges,
// one endpoint (coin flip) reattached to a non-adjacent vertex; swap =
// degree*m/2 disjoint edge pairs (v0,v1),(v2,v3) -> (v0,v2),(v1,v3), resampled
// up to 100 times when a replacement is invalid, then skipped.
Graph perturb(const Graph& g, const PerturbationScenario& scenario, Rng& rng,
              PerturbStats* stats = nullptr);

// Edges whose removal would increase the component count.
std::vector<Edge> bridge_edges(const Graph& g);

struct SweepResult {
    std::vector<double> degrees;
    std::vector<double> mean_norms;  // mean L2 norm of the curves per degree
    double rho = 0.0;                // Spearman of (degree, mean norm)
};

// Perturbs every graph at every degree, computes diversity curves, and tracks
// the mean curve norm. Cells (degree, graph) draw independent derived RNG
// streams and run in parallel.
SweepResult perturbation_sweep(const Dataset& ds, PerturbKind kind,
                               const std::vector<double>& degrees,
                               const std::vector<int>& scales, const CoarseningConfig& cfg,
                               int threads = 0);

}  // namespace divcurve
