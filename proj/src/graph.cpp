#include "divcurve/graph.hpp"

#include <algorithm>
#include <queue>

namespace divcurve {

bool Graph::has_edge(int u, int v) const {
    return std::binary_search(edges.begin(), edges.end(), make_edge(u, v));
}

Graph make_graph(int n, std::vector<Edge> edges,
                 std::optional<std::vector<std::vector<double>>> features,
                 std::optional<int> label,
                 std::optional<std::vector<std::vector<int>>> origin_sets) {
    if (n < 0) throw ValidationError("graph: negative node count");
    for (auto& [u, v] : edges) {
        if (u == v) throw ValidationError("graph: self-loop at node " + std::to_string(u));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw RangeError("graph: edge endpoint out of range [0, " + std::to_string(n) +
                             "): (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    if (features) {
        if (static_cast<int>(features->size()) != n)
            throw ValidationError("graph: feature row count != node count");
        std::size_t dim = features->empty() ? 0 : features->front().size();
        if (n > 0 && dim == 0) throw ValidationError("graph: zero-dimensional features");
        for (const auto& row : *features)
            if (row.size() != dim) throw ValidationError("graph: ragged feature rows");
    }
    if (origin_sets) {
        if (static_cast<int>(origin_sets->size()) != n)
            throw ValidationError("graph: origin set count != node count");
        std::vector<int> all;
        for (auto& s : *origin_sets) {
            if (s.empty()) throw ValidationError("graph: empty origin set");
            std::sort(s.begin(), s.end());
            all.insert(all.end(), s.begin(), s.end());
        }
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end())
            throw ValidationError("graph: origin sets are not pairwise disjoint");
    }

    Graph g;
    g.n = n;
    g.edges = std::move(edges);
    g.features = std::move(features);
    g.label = label;
    g.origin_sets = std::move(origin_sets);
    return g;
}

std::vector<std::vector<int>> adjacency_list(const Graph& g) {
    std::vector<std::vector<int>> adj(g.n);
    for (const auto& [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

std::vector<int> degrees(const Graph& g) {
    std::vector<int> deg(g.n, 0);
    for (const auto& [u, v] : g.edges) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

std::pair<int, std::vector<int>> connected_components(const Graph& g) {
    std::vector<int> comp(g.n, -1);
    auto adj = adjacency_list(g);
    int count = 0;
    for (int s = 0; s < g.n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = count;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : adj[x])
                if (comp[y] < 0) {
                    comp[y] = count;
                    q.push(y);
                }
        }
        ++count;
    }
    return {count, std::move(comp)};
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.n)
        throw ValidationError("relabel: permutation size != node count");
    std::vector<Edge> edges;
    edges.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) edges.push_back(make_edge(perm[u], perm[v]));

    std::optional<std::vector<std::vector<double>>> features;
    if (g.features) {
        features.emplace(g.n);
        for (int i = 0; i < g.n; ++i) (*features)[perm[i]] = (*g.features)[i];
    }
    std::optional<std::vector<std::vector<int>>> origins;
    if (g.origin_sets) {
        origins.emplace(g.n);
        for (int i = 0; i < g.n; ++i) (*origins)[perm[i]] = (*g.origin_sets)[i];
    }
    return make_graph(g.n, std::move(edges), std::move(features), g.label, std::move(origins));
}

}  // namespace divcurve
