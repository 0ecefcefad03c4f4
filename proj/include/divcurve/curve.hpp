#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "divcurve/coarsen.hpp"
#include "divcurve/graph.hpp"
#include "divcurve/metrics.hpp"

namespace divcurve {

// Knobs of the curve computation. Defaults: shortest-path metric, random
// scorer, three repeats, t = 1 for spectral node metrics.
struct CoarseningConfig {
    ScorerKind scorer = ScorerKind::kRandom;
    Metric metric = Metric::kShortestPath;
    double time = 1.0;
    int repeats = 3;
    std::uint64_t seed = 0;
};

std::string config_digest(const CoarseningConfig& cfg);

// 16-hex-digit FNV-1a digest of an arbitrary config key string.
std::string digest_hex(const std::string& key);

struct DiversityCurve {
    std::vector<int> scales;  // ascending, positive
    std::vector<double> values;
    int repeats = 0;
    std::string config_digest;
};

// Spread of g coarsened/upsampled to every cardinality in `scales`, averaged
// over cfg.repeats runs. Scales above |g| are reached by node upsampling
// (ascending), scales at or below |g| by edge contraction (descending).
// Scales below the component count c are filled by linear interpolation
// between (1, 1) and the lowest reached point; the value at scale 1 is 1 by
// definition. RNG streams derive from (cfg.seed, graph_index, repeat, phase).
DiversityCurve diversity_curve(const Graph& g, const std::vector<int>& scales,
                               const CoarseningConfig& cfg, std::uint64_t graph_index = 0);

// Single-repeat kernel; diversity_curve averages these over r = 0..repeats-1.
DiversityCurve diversity_curve_repeat(const Graph& g, const std::vector<int>& scales,
                                      const CoarseningConfig& cfg, std::uint64_t graph_index,
                                      int repeat_index);

// Pointwise mean of curves sharing identical scales; repeats accumulate.
DiversityCurve average_curves(const std::vector<DiversityCurve>& curves);

// Spread of every one-edge contraction of g, in g.edges order.
std::vector<double> one_edge_contraction_spreads(const Graph& g, Metric metric, double t = 1.0);

// Scales 1..max cardinality of the dataset (the default evaluation grid).
std::vector<int> auto_scales(const Dataset& ds);

// Curves for a whole dataset, index-aligned; labels and original sizes ride
// along for downstream classification and grouped CV.
struct CurveSet {
    std::vector<int> scales;
    std::vector<DiversityCurve> curves;
    std::vector<std::optional<int>> labels;
    std::vector<int> graph_sizes;
};

// Parallel over (graph, repeat) tasks; output identical for any thread count.
CurveSet compute_curves(const Dataset& ds, const std::vector<int>& scales,
                        const CoarseningConfig& cfg, int threads = 0);

// CSV: "# config_digest=..." comment, then header graph_id,scale,value.
void write_curves_csv(std::ostream& out, const CurveSet& set);
// JSONL: one object per curve mirroring DiversityCurve plus graph metadata.
void write_curves_jsonl(std::ostream& out, const CurveSet& set);
CurveSet load_curves_jsonl(const std::string& path);

}  // namespace divcurve
