#pragma once

#include <Eigen/Dense>

#include "divcurve/dist_matrix.hpp"
#include "divcurve/graph.hpp"

namespace divcurve {

// Node metric choices for spread evaluation.
enum class Metric { kShortestPath, kFeature, kDiffusion, kHeatKernel };

Metric metric_from_string(const std::string& name);
std::string metric_name(Metric m);
bool metric_is_structural(Metric m);  // usable by spread-based edge scorers

// Hop-count distances via one BFS per source, +inf across components.
DistMatrix shortest_path_matrix(const Graph& g);

// Pairwise Euclidean distances between feature rows (pseudo-metric).
DistMatrix feature_distance_matrix(const Graph& g);

// D^{-1/2} (D - A) D^{-1/2}; rows and columns of degree-0 nodes are zero.
Eigen::MatrixXd normalized_laplacian(const Graph& g);

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // sorted descending
    Eigen::MatrixXd eigenvectors;     // orthonormal, column l pairs with eigenvalues[l]
};

// Requires symmetry to 1e-10; validates orthonormality and the reconstruction
// residual to 1e-8 after the solve.
SpectralDecomposition spectral_decomposition(const Eigen::MatrixXd& sym);

// Embeds node x as (lambda_1^t psi_1(x), ..., lambda_{n-1}^t psi_{n-1}(x)),
// dropping the top (index-0) eigenpair of the descending-sorted spectrum, and
// takes pairwise Euclidean distances of the embeddings.
DistMatrix diffusion_distance_matrix(const Graph& g, double t = 1.0);

// entry(i,j) = sum_l exp(-lambda_l * t * psi_l(i) * psi_l(j)), the product
// kept inside the exponent exactly as defined; the diagonal is not zeroed and
// the table is fed to spread verbatim.
DistMatrix heat_kernel_distance_matrix(const Graph& g, double t = 1.0);

// Dispatch on the metric selector; `t` is the time parameter of the spectral
// metrics and is ignored otherwise.
DistMatrix metric_matrix(const Graph& g, Metric metric, double t = 1.0);

}  // namespace divcurve
