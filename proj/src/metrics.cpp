#include "divcurve/metrics.hpp"

#include <cmath>
#include <queue>
#include <sstream>

namespace divcurve {

std::string DistMatrix::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (j) out << ',';
            double v = (*this)(i, j);
            if (std::isinf(v))
                out << "inf";
            else
                out << v;
        }
        out << '\n';
    }
    return out.str();
}

Metric metric_from_string(const std::string& name) {
    if (name == "shortest-path" || name == "sp") return Metric::kShortestPath;
    if (name == "feature") return Metric::kFeature;
    if (name == "diffusion") return Metric::kDiffusion;
    if (name == "heat") return Metric::kHeatKernel;
    throw ConfigError("unknown metric: " + name);
}

std::string metric_name(Metric m) {
    switch (m) {
        case Metric::kShortestPath: return "shortest-path";
        case Metric::kFeature: return "feature";
        case Metric::kDiffusion: return "diffusion";
        case Metric::kHeatKernel: return "heat";
    }
    return "?";
}

bool metric_is_structural(Metric m) { return m != Metric::kFeature; }

DistMatrix shortest_path_matrix(const Graph& g) {
    if (g.n == 0) throw ValidationError("shortest_path_matrix: empty graph");
    DistMatrix d(g.n, kInfDist);
    auto adj = adjacency_list(g);
    std::vector<int> dist(g.n);
    for (int s = 0; s < g.n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x])
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    q.push(y);
                }
        }
        for (int j = 0; j < g.n; ++j)
            if (dist[j] >= 0) d(s, j) = static_cast<double>(dist[j]);
    }
    return d;
}

DistMatrix feature_distance_matrix(const Graph& g) {
    if (!g.features) throw ConfigError("feature_distance_matrix: graph has no features");
    const auto& f = *g.features;
    DistMatrix d(g.n, 0.0);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < f[i].size(); ++k) {
                double diff = f[i][k] - f[j][k];
                s += diff * diff;
            }
            d.set_symmetric(i, j, std::sqrt(s));
        }
    return d;
}

Eigen::MatrixXd normalized_laplacian(const Graph& g) {
    if (g.n < 1) throw ValidationError("normalized_laplacian: empty graph");
    auto deg = degrees(g);
    std::vector<double> inv_sqrt(g.n, 0.0);  // 0^{-1/2} := 0 for isolated nodes
    for (int i = 0; i < g.n; ++i)
        if (deg[i] > 0) inv_sqrt[i] = 1.0 / std::sqrt(static_cast<double>(deg[i]));

    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(g.n, g.n);
    for (int i = 0; i < g.n; ++i)
        if (deg[i] > 0) lap(i, i) = 1.0;
    for (const auto& [u, v] : g.edges) {
        double w = -inv_sqrt[u] * inv_sqrt[v];
        lap(u, v) = w;
        lap(v, u) = w;
    }
    return lap;
}

SpectralDecomposition spectral_decomposition(const Eigen::MatrixXd& sym) {
    if (sym.rows() != sym.cols())
        throw ValidationError("spectral_decomposition: matrix is not square");
    const double asym = (sym - sym.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10)
        throw ValidationError("spectral_decomposition: input asymmetric by " +
                              std::to_string(asym));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success)
        throw NumericError("spectral_decomposition: eigensolver failed to converge");

    const auto n = sym.rows();
    SpectralDecomposition out;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    out.eigenvectors.resize(n, n);
    for (Eigen::Index l = 0; l < n; ++l) {  // Eigen sorts ascending; flip to descending
        out.eigenvalues[static_cast<std::size_t>(l)] = solver.eigenvalues()(n - 1 - l);
        out.eigenvectors.col(l) = solver.eigenvectors().col(n - 1 - l);
    }

    const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
    Eigen::VectorXd evals =
        Eigen::Map<const Eigen::VectorXd>(out.eigenvalues.data(), n);
    const double residual =
        (sym - out.eigenvectors * evals.asDiagonal() * out.eigenvectors.transpose())
            .cwiseAbs()
            .maxCoeff();
    if (residual > 1e-8 * scale)
        throw NumericError("spectral_decomposition: reconstruction residual " +
                           std::to_string(residual));
    const double ortho =
        (out.eigenvectors.transpose() * out.eigenvectors - Eigen::MatrixXd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    if (ortho > 1e-8)
        throw NumericError("spectral_decomposition: eigenvectors not orthonormal");
    return out;
}

DistMatrix diffusion_distance_matrix(const Graph& g, double t) {
    if (g.n < 2) throw SizeLimitError("diffusion_distance_matrix: needs n >= 2");
    if (t <= 0) throw RangeError("diffusion_distance_matrix: t must be positive");
    auto dec = spectral_decomposition(normalized_laplacian(g));

    // Per-node embedding over eigenpairs 1..n-1 (index 0 dropped).
    std::vector<double> weight(dec.eigenvalues.size(), 0.0);
    for (std::size_t l = 1; l < dec.eigenvalues.size(); ++l) {
        double lambda = dec.eigenvalues[l];
        if (lambda < -1e-8)
            throw NumericError("diffusion_distance_matrix: negative eigenvalue " +
                               std::to_string(lambda));
        if (lambda < 0) lambda = 0.0;
        weight[l] = std::pow(lambda, t);
    }

    DistMatrix d(g.n, 0.0);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) {
            double s = 0.0;
            for (std::size_t l = 1; l < dec.eigenvalues.size(); ++l) {
                double diff = weight[l] * (dec.eigenvectors(i, static_cast<Eigen::Index>(l)) -
                                           dec.eigenvectors(j, static_cast<Eigen::Index>(l)));
                s += diff * diff;
            }
            d.set_symmetric(i, j, std::sqrt(s));
        }
    return d;
}

DistMatrix heat_kernel_distance_matrix(const Graph& g, double t) {
    if (g.n < 1) throw ValidationError("heat_kernel_distance_matrix: empty graph");
    if (t <= 0) throw RangeError("heat_kernel_distance_matrix: t must be positive");
    auto dec = spectral_decomposition(normalized_laplacian(g));

    DistMatrix d(g.n, 0.0);
    for (int i = 0; i < g.n; ++i)
        for (int j = i; j < g.n; ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < dec.eigenvalues.size(); ++l)
                s += std::exp(-dec.eigenvalues[l] * t *
                              dec.eigenvectors(i, static_cast<Eigen::Index>(l)) *
                              dec.eigenvectors(j, static_cast<Eigen::Index>(l)));
            d.set_symmetric(i, j, s);
        }
    return d;
}

DistMatrix metric_matrix(const Graph& g, Metric metric, double t) {
    switch (metric) {
        case Metric::kShortestPath: return shortest_path_matrix(g);
        case Metric::kFeature: return feature_distance_matrix(g);
        case Metric::kDiffusion: return diffusion_distance_matrix(g, t);
        case Metric::kHeatKernel: return heat_kernel_distance_matrix(g, t);
    }
    throw ConfigError("metric_matrix: unknown metric");
}

}  // namespace divcurve
