#include "divcurve/genperturb.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "divcurve/parallel.hpp"
#include "divcurve/analysis.hpp"

namespace divcurve {

namespace {

void check_prob(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError(std::string(what) + " must lie in [0, 1]");
}

// Near-equal partition: the first n % k blocks get one extra node.
std::vector<int> community_of(int n, int k) {
    if (k < 1 || k > n) throw ValidationError("invalid community partition");
    std::vector<int> comm(n);
    int base = n / k, extra = n % k, node = 0;
    for (int c = 0; c < k; ++c) {
        int size = base + (c < extra ? 1 : 0);
        for (int i = 0; i < size; ++i) comm[node++] = c;
    }
    return comm;
}

Graph planted_partition(int n, int k, double p_in, double p_out, Rng& rng,
                        std::optional<int> label) {
    check_prob(p_in, "p_in");
    check_prob(p_out, "p_out");
    auto comm = community_of(n, k);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(comm[u] == comm[v] ? p_in : p_out)) edges.emplace_back(u, v);
    return make_graph(n, std::move(edges), std::nullopt, label);
}

struct MutableGraph {
    int n;
    std::set<Edge> edges;

    explicit MutableGraph(const Graph& g) : n(g.n), edges(g.edges.begin(), g.edges.end()) {}

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(n);
        for (const auto& [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return adj;
    }
};

// Bridges by DFS lowlink.
std::set<Edge> bridge_set(const MutableGraph& g) {
    auto adj = g.adjacency();
    std::vector<int> disc(g.n, -1), low(g.n, 0);
    std::set<Edge> bridges;
    int timer = 0;
    std::function<void(int, int)> dfs = [&](int u, int parent_edge_to) {
        disc[u] = low[u] = timer++;
        bool skipped_parent = false;
        for (int v : adj[u]) {
            if (v == parent_edge_to && !skipped_parent) {
                skipped_parent = true;  // skip only one copy (simple graph: the tree edge)
                continue;
            }
            if (disc[v] < 0) {
                dfs(v, u);
                low[u] = std::min(low[u], low[v]);
                if (low[v] > disc[u]) bridges.insert(make_edge(u, v));
            } else {
                low[u] = std::min(low[u], disc[v]);
            }
        }
    };
    for (int s = 0; s < g.n; ++s)
        if (disc[s] < 0) dfs(s, -1);
    return bridges;
}

int component_count(const MutableGraph& g) {
    auto adj = g.adjacency();
    std::vector<char> seen(g.n, 0);
    int count = 0;
    for (int s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        ++count;
        std::vector<int> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
        }
    }
    return count;
}

Edge nth_edge(const std::set<Edge>& edges, std::size_t idx) {
    auto it = edges.begin();
    std::advance(it, static_cast<long>(idx));
    return *it;
}

void apply_add(MutableGraph& g, double degree, Rng& rng, PerturbStats& stats) {
    std::vector<Edge> absent;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (!g.edges.count({u, v})) absent.emplace_back(u, v);
    stats.requested = static_cast<int>(std::floor(degree * static_cast<double>(absent.size())));
    for (int step = 0; step < stats.requested; ++step) {
        std::size_t idx = static_cast<std::size_t>(rng.below(absent.size()));
        g.edges.insert(absent[idx]);
        absent[idx] = absent.back();
        absent.pop_back();
        ++stats.applied;
    }
}

void apply_remove(MutableGraph& g, double degree, Rng& rng, PerturbStats& stats) {
    const int m = static_cast<int>(g.edges.size());
    const int removable = m - (g.n - component_count(g));  // cycle rank
    stats.requested = static_cast<int>(std::floor(degree * static_cast<double>(removable)));
    for (int step = 0; step < stats.requested; ++step) {
        auto bridges = bridge_set(g);
        std::vector<Edge> pool;
        for (const Edge& e : g.edges)
            if (!bridges.count(e)) pool.push_back(e);
        if (pool.empty()) break;  // only bridges left; stop with applied < requested
        g.edges.erase(pool[static_cast<std::size_t>(rng.below(pool.size()))]);
        ++stats.applied;
    }
}

void apply_rewire(MutableGraph& g, double degree, Rng& rng, PerturbStats& stats) {
    stats.requested = static_cast<int>(std::floor(degree * static_cast<double>(g.edges.size())));
    for (int step = 0; step < stats.requested; ++step) {
        if (g.edges.empty()) break;
        Edge e = nth_edge(g.edges, static_cast<std::size_t>(rng.below(g.edges.size())));
        // Coin flip picks the endpoint to detach; the other one keeps the edge.
        int detached = rng.below(2) ? e.second : e.first;
        int kept = (detached == e.first) ? e.second : e.first;
        auto candidates_for = [&](int node) {
            std::vector<int> cand;
            for (int w = 0; w < g.n; ++w)
                if (w != node && !g.edges.count(make_edge(node, w))) cand.push_back(w);
            return cand;
        };
        auto cand = candidates_for(kept);
        if (cand.empty()) {
            std::swap(kept, detached);
            cand = candidates_for(kept);
            if (cand.empty()) continue;  // both endpoints saturated; skip this edit
        }
        int w = cand[static_cast<std::size_t>(rng.below(cand.size()))];
        g.edges.erase(e);
        g.edges.insert(make_edge(kept, w));
        ++stats.applied;
    }
}

void apply_swap(MutableGraph& g, double degree, Rng& rng, PerturbStats& stats) {
    stats.requested =
        static_cast<int>(std::floor(degree * static_cast<double>(g.edges.size()) / 2.0));
    constexpr int kRetries = 100;
    for (int step = 0; step < stats.requested; ++step) {
        bool done = false;
        for (int attempt = 0; attempt < kRetries && !done; ++attempt) {
            if (g.edges.size() < 2) break;
            std::size_t i = static_cast<std::size_t>(rng.below(g.edges.size()));
            std::size_t j = static_cast<std::size_t>(rng.below(g.edges.size()));
            if (i == j) continue;
            Edge e1 = nth_edge(g.edges, i), e2 = nth_edge(g.edges, j);
            int v0 = e1.first, v1 = e1.second, v2 = e2.first, v3 = e2.second;
            if (v0 == v2 || v0 == v3 || v1 == v2 || v1 == v3) continue;  // must be disjoint
            Edge f1 = make_edge(v0, v2), f2 = make_edge(v1, v3);
            if (g.edges.count(f1) || g.edges.count(f2)) continue;
            g.edges.erase(e1);
            g.edges.erase(e2);
            g.edges.insert(f1);
            g.edges.insert(f2);
            ++stats.applied;
            done = true;
        }
    }
}

}  // namespace

GraphModel model_from_string(const std::string& name) {
    if (name == "ER" || name == "er") return ErModel{};
    if (name == "RP" || name == "rp") return RpModel{};
    if (name == "RG" || name == "rg") return RgModel{};
    if (name == "SBM" || name == "sbm") return SbmModel{};
    throw ConfigError("unknown graph model: " + name);
}

std::string model_name(const GraphModel& model) {
    switch (model.index()) {
        case 0: return "ER";
        case 1: return "RP";
        case 2: return "RG";
        default: return "SBM";
    }
}

Graph generate_graph(const GraphModel& model, int n, Rng& rng, std::optional<int> label) {
    if (n < 1) throw ValidationError("generate_graph: n must be >= 1");
    if (const auto* er = std::get_if<ErModel>(&model)) {
        check_prob(er->p, "p");
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.bernoulli(er->p)) edges.emplace_back(u, v);
        return make_graph(n, std::move(edges), std::nullopt, label);
    }
    if (const auto* rp = std::get_if<RpModel>(&model))
        return planted_partition(n, rp->communities, rp->p_in, rp->p_out, rng, label);
    if (const auto* sbm = std::get_if<SbmModel>(&model))
        return planted_partition(n, sbm->communities, sbm->p_in, sbm->p_out, rng, label);

    const auto& rg = std::get<RgModel>(model);
    if (!(rg.radius > 0.0)) throw ValidationError("RG radius must be positive");
    std::vector<std::vector<double>> points(static_cast<std::size_t>(n));
    for (auto& p : points) p = {rng.uniform01(), rng.uniform01()};
    std::vector<Edge> edges;
    const double r2 = rg.radius * rg.radius;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            double dx = points[u][0] - points[v][0], dy = points[u][1] - points[v][1];
            if (dx * dx + dy * dy <= r2) edges.emplace_back(u, v);
        }
    std::optional<std::vector<std::vector<double>>> features;
    if (rg.keep_coordinates) features = std::move(points);
    return make_graph(n, std::move(edges), std::move(features), label);
}

PerturbKind perturb_kind_from_string(const std::string& name) {
    if (name == "add_edge" || name == "add") return PerturbKind::kAddEdge;
    if (name == "remove_edge" || name == "remove") return PerturbKind::kRemoveEdge;
    if (name == "rewire_edge" || name == "rewire") return PerturbKind::kRewireEdge;
    if (name == "swap_edge" || name == "swap") return PerturbKind::kSwapEdge;
    throw ConfigError("unknown perturbation: " + name);
}

std::string perturb_kind_name(PerturbKind k) {
    switch (k) {
        case PerturbKind::kAddEdge: return "add_edge";
        case PerturbKind::kRemoveEdge: return "remove_edge";
        case PerturbKind::kRewireEdge: return "rewire_edge";
        case PerturbKind::kSwapEdge: return "swap_edge";
    }
    return "?";
}

std::vector<Edge> bridge_edges(const Graph& g) {
    MutableGraph mg(g);
    auto bridges = bridge_set(mg);
    return {bridges.begin(), bridges.end()};
}

Graph perturb(const Graph& g, const PerturbationScenario& scenario, Rng& rng,
              PerturbStats* stats) {
    if (!(scenario.degree >= 0.0 && scenario.degree <= 1.0))
        throw RangeError("perturb: degree must lie in [0, 1]");
    MutableGraph mg(g);
    PerturbStats local;
    switch (scenario.kind) {
        case PerturbKind::kAddEdge: apply_add(mg, scenario.degree, rng, local); break;
        case PerturbKind::kRemoveEdge: apply_remove(mg, scenario.degree, rng, local); break;
        case PerturbKind::kRewireEdge: apply_rewire(mg, scenario.degree, rng, local); break;
        case PerturbKind::kSwapEdge: apply_swap(mg, scenario.degree, rng, local); break;
    }
    if (stats) *stats = local;
    return make_graph(mg.n, std::vector<Edge>(mg.edges.begin(), mg.edges.end()), g.features,
                      g.label, g.origin_sets);
}

SweepResult perturbation_sweep(const Dataset& ds, PerturbKind kind,
                               const std::vector<double>& degrees,
                               const std::vector<int>& scales, const CoarseningConfig& cfg,
                               int threads) {
    if (ds.graphs.empty()) throw ValidationError("perturbation_sweep: empty dataset");
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (!(degrees[i] >= 0.0 && degrees[i] <= 1.0))
            throw RangeError("perturbation_sweep: degrees must lie in [0, 1]");
        if (i > 0 && degrees[i] <= degrees[i - 1])
            throw ValidationError("perturbation_sweep: degrees must be ascending");
    }

    const std::size_t n_graphs = ds.graphs.size();
    std::vector<double> norms(degrees.size() * n_graphs, 0.0);
    parallel_for(degrees.size() * n_graphs, threads, [&](std::size_t cell) {
        const std::size_t di = cell / n_graphs, gi = cell % n_graphs;
        Rng rng(derive_stream(cfg.seed, kPhasePerturb, di, gi));
        const Graph& original = ds.graphs[gi];
        Graph perturbed = perturb(original, {kind, degrees[di]}, rng);
        if (kind == PerturbKind::kRemoveEdge &&
            connected_components(perturbed).first != connected_components(original).first)
            throw NumericError("perturbation_sweep: bridge protection violated");
        auto curve = diversity_curve(perturbed, scales, cfg, gi);
        double s = 0.0;
        for (double v : curve.values) s += v * v;
        norms[cell] = std::sqrt(s);
    });

    SweepResult res;
    res.degrees = degrees;
    res.mean_norms.resize(degrees.size(), 0.0);
    for (std::size_t di = 0; di < degrees.size(); ++di) {
        for (std::size_t gi = 0; gi < n_graphs; ++gi)
            res.mean_norms[di] += norms[di * n_graphs + gi];
        res.mean_norms[di] /= static_cast<double>(n_graphs);
    }
    res.rho = spearman(res.degrees, res.mean_norms);
    return res;
}

}  // namespace divcurve
