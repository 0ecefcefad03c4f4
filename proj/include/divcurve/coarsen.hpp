#pragma once

#include <vector>

#include "divcurve/graph.hpp"
#include "divcurve/metrics.hpp"
#include "divcurve/rng.hpp"

namespace divcurve {

enum class ScorerKind { kRandom, kSpreadExact, kSpreadApprox };

ScorerKind scorer_from_string(const std::string& name);
std::string scorer_name(ScorerKind k);

// Edge scoring policy. Spread-based kinds score an edge by the drop in spread
// its contraction causes and require a graph-structural metric; the approx
// kind replaces the post-contraction metric by a min-merge of the original
// distance matrix rows instead of recomputing distances.
struct EdgeScorer {
    ScorerKind kind = ScorerKind::kRandom;
    Metric metric = Metric::kShortestPath;
    double time = 1.0;  // time parameter for spectral metrics
};

// One score per edge, aligned with g.edges (lexicographic edge order).
// Random scores are i.i.d. uniform(0,1). Edgeless graphs yield an empty map.
std::vector<std::pair<Edge, double>> score_edges(const Graph& g, const EdgeScorer& scorer,
                                                 Rng& rng);

// Greedy ascending-score selection: an edge enters the round only if neither
// endpoint was touched by an earlier selection (or listed in already_touched).
// Ties break by lexicographic edge order.
std::vector<Edge> build_contraction_round(const Graph& g,
                                          const std::vector<std::pair<Edge, double>>& scores,
                                          const std::vector<int>& already_touched = {});

// Contracts e = (u, v), u < v surviving. Incident edges are rewired onto u
// without introducing multi-edges or loops; remaining nodes are re-indexed
// densely with order preserved. Features merge as the unweighted mean over
// the original nodes tracked in the two origin sets.
Graph contract_edge(const Graph& g, Edge e);

struct CoarsenStep {
    int target = 0;
    Graph graph;
    bool reached = true;  // false: stuck at the component count above `target`
};

// Coarsens g to each cardinality in `targets` (descending). Scores are
// recomputed only when a round can select no further edge. Targets below the
// component count report the lowest reachable graph flagged reached = false.
// The random scorer takes the documented fast path: edges are permuted
// directly by one Fisher-Yates shuffle per round instead of sampling and
// sorting uniform scores, which selects rounds with the same distribution.
std::vector<CoarsenStep> coarsen_sequence(const Graph& g, const std::vector<int>& targets,
                                          const EdgeScorer& scorer, Rng& rng);

// Grows g to each cardinality in `targets` (ascending) by node duplication:
// the i-th pick v gets a twin adjacent to N(v) and to v itself. The pick
// order is m full permutations of the base nodes plus r draws without
// replacement, where (targets.back() - n) = m*n + r, so pick counts never
// differ by more than one.
std::vector<std::pair<int, Graph>> upsample_node_sequence(const Graph& g,
                                                          const std::vector<int>& targets,
                                                          Rng& rng);

// All single-edge contractions of g, in g.edges order (exponential helper for
// the exhaustive theorem checks; gated to n <= 12).
std::vector<Graph> one_edge_contractions(const Graph& g);

}  // namespace divcurve
