#include "divcurve/coarsen.hpp"

#include <algorithm>
#include <set>

#include "divcurve/spread.hpp"

namespace divcurve {

namespace {

// Distance matrix after identifying v into u on the original matrix: the
// merged node takes the row-wise minimum of the two source rows, every other
// pair keeps its original distance. No shortest paths are re-run.
DistMatrix min_merge_rows(const DistMatrix& d, int u, int v) {
    const int n = d.size();
    DistMatrix out(n - 1, 0.0);
    auto shifted = [&](int x) { return x > v ? x - 1 : x; };
    for (int i = 0; i < n; ++i) {
        if (i == v) continue;
        for (int j = i + 1; j < n; ++j) {
            if (j == v) continue;
            out.set_symmetric(shifted(i), shifted(j), d(i, j));
        }
    }
    for (int j = 0; j < n; ++j) {
        if (j == u || j == v) continue;
        out.set_symmetric(shifted(u), shifted(j), std::min(d(u, j), d(v, j)));
    }
    return out;
}

double graph_spread(const Graph& g, Metric metric, double t) {
    return spread(metric_matrix(g, metric, t));
}

void require_structural(const EdgeScorer& scorer) {
    if (!metric_is_structural(scorer.metric))
        throw ConfigError("spread-based edge scoring requires a graph-structural metric");
}

}  // namespace

ScorerKind scorer_from_string(const std::string& name) {
    if (name == "random") return ScorerKind::kRandom;
    if (name == "spread" || name == "spread-exact") return ScorerKind::kSpreadExact;
    if (name == "spread-approx" || name == "approx") return ScorerKind::kSpreadApprox;
    throw ConfigError("unknown scorer: " + name);
}

std::string scorer_name(ScorerKind k) {
    switch (k) {
        case ScorerKind::kRandom: return "random";
        case ScorerKind::kSpreadExact: return "spread-exact";
        case ScorerKind::kSpreadApprox: return "spread-approx";
    }
    return "?";
}

std::vector<std::pair<Edge, double>> score_edges(const Graph& g, const EdgeScorer& scorer,
                                                 Rng& rng) {
    std::vector<std::pair<Edge, double>> scores;
    scores.reserve(g.edges.size());
    switch (scorer.kind) {
        case ScorerKind::kRandom:
            for (const Edge& e : g.edges) scores.emplace_back(e, rng.uniform01());
            break;
        case ScorerKind::kSpreadExact: {
            require_structural(scorer);
            if (g.edges.empty()) break;
            const double base = graph_spread(g, scorer.metric, scorer.time);
            for (const Edge& e : g.edges)
                scores.emplace_back(
                    e, base - graph_spread(contract_edge(g, e), scorer.metric, scorer.time));
            break;
        }
        case ScorerKind::kSpreadApprox: {
            require_structural(scorer);
            if (g.edges.empty()) break;
            const DistMatrix d = metric_matrix(g, scorer.metric, scorer.time);
            const double base = spread(d);
            for (const Edge& e : g.edges)
                scores.emplace_back(e, base - spread(min_merge_rows(d, e.first, e.second)));
            break;
        }
    }
    return scores;
}

std::vector<Edge> build_contraction_round(const Graph& g,
                                          const std::vector<std::pair<Edge, double>>& scores,
                                          const std::vector<int>& already_touched) {
    if (scores.size() != g.edges.size())
        throw ValidationError("build_contraction_round: scores must cover all edges");
    auto order = scores;
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    std::vector<bool> touched(g.n, false);
    for (int v : already_touched) touched[v] = true;
    std::vector<Edge> round;
    for (const auto& [e, score] : order) {
        if (touched[e.first] || touched[e.second]) continue;
        touched[e.first] = touched[e.second] = true;
        round.push_back(e);
    }
    return round;
}

Graph contract_edge(const Graph& g, Edge e) {
    int u = std::min(e.first, e.second), v = std::max(e.first, e.second);
    if (!g.has_edge(u, v))
        throw ValidationError("contract_edge: (" + std::to_string(u) + ", " +
                              std::to_string(v) + ") is not an edge");

    auto shifted = [&](int x) { return x > v ? x - 1 : x; };
    std::set<Edge> edges;
    for (const auto& [a, b] : g.edges) {
        int a2 = (a == v) ? u : a;
        int b2 = (b == v) ? u : b;
        if (a2 == b2) continue;  // the contracted edge itself
        edges.insert(make_edge(shifted(a2), shifted(b2)));
    }

    const bool track_origins = g.features.has_value() || g.origin_sets.has_value();
    std::optional<std::vector<std::vector<int>>> origins;
    std::optional<std::vector<std::vector<double>>> features;
    if (track_origins) {
        std::vector<std::vector<int>> base;
        if (g.origin_sets) {
            base = *g.origin_sets;
        } else {
            base.resize(g.n);
            for (int i = 0; i < g.n; ++i) base[i] = {i};
        }
        const std::size_t size_u = base[u].size(), size_v = base[v].size();
        base[u].insert(base[u].end(), base[v].begin(), base[v].end());
        std::sort(base[u].begin(), base[u].end());

        if (g.features) {
            auto feat = *g.features;
            // Mean over original nodes = size-weighted mean of the two rows.
            const double wu = static_cast<double>(size_u), wv = static_cast<double>(size_v);
            for (std::size_t k = 0; k < feat[u].size(); ++k)
                feat[u][k] = (wu * feat[u][k] + wv * (*g.features)[v][k]) / (wu + wv);
            feat.erase(feat.begin() + v);
            features = std::move(feat);
        }
        base.erase(base.begin() + v);
        origins = std::move(base);
    }

    return make_graph(g.n - 1, std::vector<Edge>(edges.begin(), edges.end()),
                      std::move(features), g.label, std::move(origins));
}

std::vector<CoarsenStep> coarsen_sequence(const Graph& g, const std::vector<int>& targets,
                                          const EdgeScorer& scorer, Rng& rng) {
    if (g.n < 1) throw ValidationError("coarsen_sequence: empty graph");
    for (std::size_t i = 0; i + 1 < targets.size(); ++i)
        if (targets[i] <= targets[i + 1])
            throw ValidationError("coarsen_sequence: targets must be strictly descending");
    if (!targets.empty() && targets.front() > g.n)
        throw RangeError("coarsen_sequence: target above node count");

    std::vector<CoarsenStep> out;
    Graph current = g;
    std::vector<Edge> round;       // pending contractions, in round-start ids
    std::vector<int> remap;        // round-start id -> current id
    std::size_t round_pos = 0;
    bool stuck = false;

    for (int target : targets) {
        while (!stuck && current.n > target) {
            if (round_pos == round.size()) {
                if (current.edges.empty()) {
                    stuck = true;  // at the component count; nothing left to contract
                    break;
                }
                if (scorer.kind == ScorerKind::kRandom) {
                    round = current.edges;  // fast path: permute edges directly
                    rng.shuffle(round);
                    std::vector<bool> touched(current.n, false);
                    std::vector<Edge> selected;
                    for (const Edge& e : round) {
                        if (touched[e.first] || touched[e.second]) continue;
                        touched[e.first] = touched[e.second] = true;
                        selected.push_back(e);
                    }
                    round = std::move(selected);
                } else {
                    round = build_contraction_round(current, score_edges(current, scorer, rng));
                }
                round_pos = 0;
                remap.resize(current.n);
                for (int i = 0; i < current.n; ++i) remap[i] = i;
            }
            Edge e = round[round_pos++];
            int u = remap[e.first], v = remap[e.second];
            if (u > v) std::swap(u, v);
            current = contract_edge(current, {u, v});
            for (int& id : remap)
                if (id > v) --id;
        }
        out.push_back({target, current, current.n == target});
    }
    return out;
}

std::vector<std::pair<int, Graph>> upsample_node_sequence(const Graph& g,
                                                          const std::vector<int>& targets,
                                                          Rng& rng) {
    if (g.n < 1) throw ValidationError("upsample_node_sequence: empty graph");
    for (std::size_t i = 0; i + 1 < targets.size(); ++i)
        if (targets[i] >= targets[i + 1])
            throw ValidationError("upsample_node_sequence: targets must be strictly ascending");
    for (int t : targets)
        if (t < g.n) throw RangeError("upsample_node_sequence: target below node count");
    if (targets.empty()) return {};

    const int n = g.n;
    const int total = targets.back() - n;
    std::vector<int> picks;
    picks.reserve(static_cast<std::size_t>(total));
    std::vector<int> base(n);
    for (int i = 0; i < n; ++i) base[i] = i;
    const int full = total / n, rest = total % n;
    for (int k = 0; k < full; ++k) {
        auto perm = base;
        rng.shuffle(perm);
        picks.insert(picks.end(), perm.begin(), perm.end());
    }
    if (rest > 0) {
        auto perm = base;
        rng.shuffle(perm);
        picks.insert(picks.end(), perm.begin(), perm.begin() + rest);
    }

    auto adj = adjacency_list(g);
    std::vector<std::vector<double>> feats;
    if (g.features) feats = *g.features;
    std::vector<std::vector<int>> origins;
    if (g.origin_sets) origins = *g.origin_sets;
    int next_origin = 0;
    if (g.origin_sets)
        for (const auto& s : origins) next_origin = std::max(next_origin, s.back() + 1);
    else
        next_origin = n;

    auto materialize = [&](int size) {
        std::vector<Edge> edges;
        for (int a = 0; a < size; ++a)
            for (int b : adj[a])
                if (a < b) edges.emplace_back(a, b);
        std::optional<std::vector<std::vector<double>>> f;
        if (g.features) f = feats;
        std::optional<std::vector<std::vector<int>>> o;
        if (g.origin_sets) {
            o = origins;
        } else if (size > n) {
            // Fresh singleton origins for new nodes keep the partition invariant.
            o.emplace(size);
            for (int i = 0; i < n; ++i) (*o)[i] = {i};
            for (int i = n; i < size; ++i) (*o)[i] = {i};
        }
        return make_graph(size, std::move(edges), std::move(f), g.label, std::move(o));
    };

    std::vector<std::pair<int, Graph>> out;
    std::size_t next_target = 0;
    int size = n;
    while (next_target < targets.size() && targets[next_target] == size) {
        out.emplace_back(size, materialize(size));
        ++next_target;
    }
    for (int i = 0; i < total; ++i) {
        const int v = picks[static_cast<std::size_t>(i)];
        const int u = size;
        adj.emplace_back();
        for (int x : adj[v]) {  // twin of v: adjacent to N(v) and to v
            adj[u].push_back(x);
            adj[x].push_back(u);
        }
        adj[u].push_back(v);
        adj[v].push_back(u);
        if (g.features) feats.push_back(feats[v]);
        if (g.origin_sets) origins.push_back({next_origin++});
        ++size;
        while (next_target < targets.size() && targets[next_target] == size) {
            out.emplace_back(size, materialize(size));
            ++next_target;
        }
    }
    return out;
}

std::vector<Graph> one_edge_contractions(const Graph& g) {
    constexpr int kMaxNodes = 12;
    if (g.n > kMaxNodes)
        throw SizeLimitError("one_edge_contractions: exhaustive mode is gated to n <= " +
                             std::to_string(kMaxNodes));
    std::vector<Graph> out;
    out.reserve(g.edges.size());
    for (const Edge& e : g.edges) out.push_back(contract_edge(g, e));
    return out;
}

}  // namespace divcurve
