#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divcurve/errors.hpp"

namespace divcurve {

// Unordered edge kept canonical as first < second.
using Edge = std::pair<int, int>;

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Undirected simple graph with dense 0-indexed node ids. Graphs are immutable
// values after construction; every operation returns a new one.
//
// origin_sets track, per current node, the original node ids merged into it
// by edge contractions (fresh ids are assigned to upsampled nodes). They stay
// pairwise disjoint and each node's feature row is the unweighted mean of the
// original features over its origin set.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;  // sorted, unique, canonical
    std::optional<std::vector<std::vector<double>>> features;
    std::optional<int> label;
    std::optional<std::vector<std::vector<int>>> origin_sets;

    int edge_count() const { return static_cast<int>(edges.size()); }
    bool has_edge(int u, int v) const;
};

// Validates invariants: endpoints in [0, n), no self-loops, uniform feature
// rows. Duplicate edges are silently deduplicated; self-loops are hard errors.
Graph make_graph(int n, std::vector<Edge> edges,
                 std::optional<std::vector<std::vector<double>>> features = std::nullopt,
                 std::optional<int> label = std::nullopt,
                 std::optional<std::vector<std::vector<int>>> origin_sets = std::nullopt);

std::vector<std::vector<int>> adjacency_list(const Graph& g);

std::vector<int> degrees(const Graph& g);

// (count, per-node component id). n = 0 yields (0, {}).
std::pair<int, std::vector<int>> connected_components(const Graph& g);

// Applies the node relabeling perm (new id of node i is perm[i]).
Graph relabel(const Graph& g, const std::vector<int>& perm);

struct Dataset {
    std::vector<Graph> graphs;
    std::string name;
};

}  // namespace divcurve
