#include "divcurve/isomorphism.hpp"

#include <algorithm>

namespace divcurve {

namespace {

bool extend(const std::vector<std::vector<bool>>& a, const std::vector<std::vector<bool>>& b,
            const std::vector<int>& deg_a, const std::vector<int>& deg_b,
            std::vector<int>& map_ab, std::vector<bool>& used, int next) {
    int n = static_cast<int>(map_ab.size());
    if (next == n) return true;
    for (int cand = 0; cand < n; ++cand) {
        if (used[cand] || deg_a[next] != deg_b[cand]) continue;
        bool ok = true;
        for (int prev = 0; prev < next && ok; ++prev)
            ok = (a[next][prev] == b[cand][map_ab[prev]]);
        if (!ok) continue;
        map_ab[next] = cand;
        used[cand] = true;
        if (extend(a, b, deg_a, deg_b, map_ab, used, next + 1)) return true;
        used[cand] = false;
    }
    return false;
}

std::vector<std::vector<bool>> dense_adjacency(const Graph& g) {
    std::vector<std::vector<bool>> a(g.n, std::vector<bool>(g.n, false));
    for (const auto& [u, v] : g.edges) a[u][v] = a[v][u] = true;
    return a;
}

}  // namespace

bool is_isomorphic_small(const Graph& g, const Graph& h) {
    constexpr int kMaxNodes = 10;
    if (g.n > kMaxNodes || h.n > kMaxNodes)
        throw SizeLimitError("is_isomorphic_small: supports n <= " + std::to_string(kMaxNodes));
    if (g.n != h.n || g.edges.size() != h.edges.size()) return false;

    auto deg_g = degrees(g), deg_h = degrees(h);
    auto sorted_g = deg_g, sorted_h = deg_h;
    std::sort(sorted_g.begin(), sorted_g.end());
    std::sort(sorted_h.begin(), sorted_h.end());
    if (sorted_g != sorted_h) return false;

    auto a = dense_adjacency(g), b = dense_adjacency(h);
    std::vector<int> map_ab(g.n, -1);
    std::vector<bool> used(g.n, false);
    return extend(a, b, deg_g, deg_h, map_ab, used, 0);
}

}  // namespace divcurve
