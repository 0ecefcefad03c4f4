#pragma once

// Named graphs used across the test suites. G_A (K_{2,3}), the house, and the
// augmented six-cycles G_C/G_D are the counterexample pairs with known
// closed-form spreads; the rest are small standards.

#include <vector>

#include "divcurve/graph.hpp"
#include "divcurve/rng.hpp"

namespace fixtures {

using divcurve::Edge;
using divcurve::Graph;
using divcurve::make_graph;

inline Graph path(int n) {
    std::vector<Edge> e;
    for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
    return make_graph(n, std::move(e));
}

inline Graph cycle(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i) e.push_back(divcurve::make_edge(i, (i + 1) % n));
    return make_graph(n, std::move(e));
}

inline Graph complete(int n) {
    std::vector<Edge> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j});
    return make_graph(n, std::move(e));
}

inline Graph star(int leaves) {
    std::vector<Edge> e;
    for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
    return make_graph(leaves + 1, std::move(e));
}

inline Graph edgeless(int n) { return make_graph(n, {}); }

// Square 0-1-2-3 with roof apex 4 adjacent to 0 and 1.
inline Graph house() {
    return make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 4}, {1, 4}});
}

// Complete bipartite K_{2,3}; same spread as the house, every one-edge
// contraction is the diamond.
inline Graph k23() {
    return make_graph(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
}

// K4 minus one edge.
inline Graph diamond() { return make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

// Triangle 0-1-2 with pendant 3 attached to 0.
inline Graph paw() { return make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}}); }

inline Graph two_triangles() {
    return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

// Six-cycle plus chords (1,5) and (2,4).
inline Graph g_c() {
    return make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {1, 5}, {2, 4}});
}

// Six-cycle plus chords (1,4) and (2,5).
inline Graph g_d() {
    return make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {1, 4}, {2, 5}});
}

inline std::vector<int> random_permutation(int n, divcurve::Rng& rng) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    return perm;
}

// G(n, p) sample on the canonical pair order.
inline Graph random_graph(int n, double p, divcurve::Rng& rng) {
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform01() < p) e.push_back({u, v});
    return make_graph(n, std::move(e));
}

// Random connected graph: a random spanning tree plus extra random edges.
inline Graph random_connected_graph(int n, double extra_p, divcurve::Rng& rng) {
    std::vector<Edge> e;
    for (int v = 1; v < n; ++v) e.push_back(divcurve::make_edge(v, rng.int_in(0, v - 1)));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform01() < extra_p) e.push_back({u, v});
    return make_graph(n, std::move(e));
}

// Disjoint union of `parts` random connected graphs (component count = parts).
inline Graph random_multi_component_graph(int parts, int max_part_size, double extra_p,
                                          divcurve::Rng& rng) {
    std::vector<Edge> edges;
    int offset = 0;
    for (int c = 0; c < parts; ++c) {
        int size = rng.int_in(2, max_part_size);
        Graph part = random_connected_graph(size, extra_p, rng);
        for (const auto& [u, v] : part.edges) edges.push_back({u + offset, v + offset});
        offset += size;
    }
    return make_graph(offset, std::move(edges));
}

}  // namespace fixtures
