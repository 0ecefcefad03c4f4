#pragma once

#include <optional>
#include <vector>

#include "divcurve/curve.hpp"
#include "divcurve/dist_matrix.hpp"
#include "divcurve/graph.hpp"
#include "divcurve/metrics.hpp"
#include "divcurve/rng.hpp"

namespace divcurve {

constexpr double kPNormInf = std::numeric_limits<double>::infinity();

// L^p distance between curves on identical scales (p >= 1, inf = max norm).
double curve_distance(const DiversityCurve& a, const DiversityCurve& b, double p = 2.0);

// Pairwise curve distances of a whole set.
DistMatrix curve_distance_matrix(const CurveSet& set, double p = 2.0);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int permutations = 0;
};

// Two-sample permutation test for equal mean curves. The statistic is the L2
// distance between group mean curves; the p-value carries a pseudo-count:
// p = (1 + #{permuted stat >= observed}) / (1 + permutations). Permutation i
// draws from the stream derived from (seed, kPhasePermTest, i).
TestResult permutation_test(const std::vector<DiversityCurve>& group_a,
                            const std::vector<DiversityCurve>& group_b, int n_perm,
                            std::uint64_t seed);

// Spearman rank correlation; ties get average ranks. Constant input is an
// error (the correlation is undefined).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct KnnCvResult {
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    std::vector<int> fold_of;  // fold id per point (exposed for audits)
};

// k-nearest-neighbour accuracy under stratified (and, when group ids are
// given, grouped) cross-validation on a precomputed distance table. Grouped
// assignment shuffles the distinct groups and deals them round-robin, so a
// group never spans folds; ungrouped assignment deals each class round-robin.
// Votes tie-break by smallest total distance, then smallest label.
KnnCvResult knn_cv_accuracy(const DistMatrix& dist, const std::vector<int>& labels, int k,
                            int folds, const std::optional<std::vector<int>>& grouped_by,
                            Rng& rng);

// Mean silhouette over points: (b - a) / max(a, b) with a the mean intra-class
// distance (self excluded), b the smallest mean distance to another class.
// Singleton-class points and a = b = 0 score 0. Needs >= 2 classes.
double silhouette_score(const DistMatrix& dist, const std::vector<int>& labels);

// Silhouette uncertainty: mean and std over `resamples` random subsets of
// `fraction` of the points (subset r draws from the stream (seed, r)).
std::pair<double, double> silhouette_resampled(const DistMatrix& dist,
                                               const std::vector<int>& labels, int resamples,
                                               double fraction, std::uint64_t seed);

enum class DistinguishMode { kSpreadOnly, kOneEdgeCurve };

// Tolerance-based pairwise distinguisher. kSpreadOnly compares the spreads at
// full cardinality; kOneEdgeCurve additionally compares the means of the
// exhaustive one-edge-contraction spread multisets at n-1 (requires equal
// cardinalities, n <= 12).
bool distinguish_pair(const Graph& g, const Graph& h, DistinguishMode mode, Metric metric,
                      double tol = 1e-5, double t = 1.0);

}  // namespace divcurve
