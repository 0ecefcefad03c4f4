// Acceptance suite: closed-form fixtures, executable theorem checks, and
// scaled statistical reproductions of the self-contained experiments. Prints
// one pass/fail line per criterion; the exit status is the failure count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <vector>

#include "divcurve/analysis.hpp"
#include "divcurve/curve.hpp"
#include "divcurve/genperturb.hpp"
#include "divcurve/isomorphism.hpp"
#include "divcurve/simplicial.hpp"
#include "divcurve/spread.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace divcurve;

namespace {

struct Failure {
    std::string message;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw Failure{message};
}

void require_close(double actual, double expected, double tol, const std::string& what) {
    if (!(std::abs(actual - expected) <= tol))
        throw Failure{what + ": got " + std::to_string(actual) + ", expected " +
                      std::to_string(expected) + " (tol " + std::to_string(tol) + ")"};
}

int g_failures = 0;

void criterion(int id, const std::string& name, double time_limit_s,
               const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string verdict = "PASS", detail;
    try {
        body();
    } catch (const Failure& f) {
        verdict = "FAIL";
        detail = f.message;
    } catch (const std::exception& e) {
        verdict = "FAIL";
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (verdict == "PASS" && elapsed > time_limit_s) {
        verdict = "FAIL";
        detail = "runtime " + std::to_string(elapsed) + "s exceeds " +
                 std::to_string(time_limit_s) + "s";
    }
    if (verdict == "FAIL") ++g_failures;
    std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", verdict.c_str(), id, name.c_str(),
                elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

double sp(const Graph& g) { return spread(shortest_path_matrix(g)); }

Dataset four_model_dataset(std::uint64_t seed) {
    // Sizes 10..29, three graphs per size and model; the reference parameters.
    const std::vector<GraphModel> models{ErModel{0.75}, RpModel{3, 0.9, 0.1}, RgModel{0.25},
                                         SbmModel{4, 0.8, 0.05}};
    Dataset ds;
    for (std::size_t mi = 0; mi < models.size(); ++mi)
        for (int n = 10; n <= 29; ++n)
            for (int k = 0; k < 3; ++k) {
                Rng rng(derive_stream(derive_stream(seed, kPhaseGenerate, mi),
                                      static_cast<std::uint64_t>(n),
                                      static_cast<std::uint64_t>(k)));
                ds.graphs.push_back(
                    generate_graph(models[mi], n, rng, static_cast<int>(mi)));
            }
    return ds;
}

struct ScoredCurves {
    DistMatrix dist{0};
    std::vector<int> labels;
    std::vector<int> sizes;
};

ScoredCurves curves_and_distances(const Dataset& ds, std::uint64_t seed) {
    CoarseningConfig cfg;
    cfg.seed = seed;
    CurveSet set = compute_curves(ds, auto_scales(ds), cfg, 0);
    ScoredCurves out;
    out.dist = curve_distance_matrix(set, 2.0);
    for (std::size_t i = 0; i < set.curves.size(); ++i) {
        out.labels.push_back(set.labels[i].value());
        out.sizes.push_back(set.graph_sizes[i]);
    }
    return out;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");

    criterion(1, "closed-form spread fixtures", 1.0, [] {
        const double e1 = std::exp(-1.0), e2 = std::exp(-2.0), e3 = std::exp(-3.0);
        struct Fixture {
            const char* name;
            Graph graph;
            double closed_form;
            double quoted;
        };
        const std::vector<Fixture> fixtures{
            {"house", fixtures::house(), 2 / (1 + 3 * e1 + e2) + 3 / (1 + 2 * e1 + 2 * e2),
             2.38846},
            {"diamond", fixtures::diamond(), 2 / (1 + 2 * e1 + e2) + 2 / (1 + 3 * e1), 2.01963},
            {"C4", fixtures::cycle(4), 4 / (1 + 2 * e1 + e2), 2.13779},
            {"C6", fixtures::cycle(6), 6 / (1 + 2 * e1 + 2 * e2 + e3), 2.91800},
            {"C3+C3", fixtures::two_triangles(), 6 / (1 + 2 * e1), 3.45670},
            {"G_C", fixtures::g_c(),
             2 / (1 + 2 * e1 + 2 * e2 + e3) + 4 / (1 + 3 * e1 + 2 * e2), 2.65737},
            {"G_D", fixtures::g_d(),
             2 / (1 + 2 * e1 + 2 * e2 + e3) + 4 / (1 + 3 * e1 + 2 * e2), 2.65737},
        };
        for (const auto& f : fixtures) {
            const double s = sp(f.graph);
            require_close(s, f.closed_form, 1e-9, std::string(f.name) + " vs closed form");
            require_close(s, f.quoted, 1e-4, std::string(f.name) + " vs quoted value");
        }
    });

    criterion(2, "collapse theorem suite (200 random graphs)", 30.0, [] {
        Rng gen(20250810);
        CoarseningConfig cfg;
        cfg.seed = 555;
        // Note: the proof's closed form for the (c+1)-value transposes a sign;
        // the value implied by the spread formula on K_{c-1} + K2, checked
        // here against a direct evaluation, is (c+1) - 2/(1+e).
        for (int trial = 0; trial < 200; ++trial) {
            const int parts = trial % 4 + 1;
            Graph g = fixtures::random_multi_component_graph(parts, 25 / parts > 6 ? 6 : 25 / parts,
                                                             0.25, gen);
            require(g.n <= 25, "graph too large");
            const int c = connected_components(g).first;
            require(c == parts, "component construction broken");
            std::vector<int> scales;
            for (int s = 1; s <= g.n; ++s) scales.push_back(s);
            auto curve = diversity_curve(g, scales, cfg, static_cast<std::uint64_t>(trial));
            for (int i = 1; i <= c; ++i)
                require(curve.values[static_cast<std::size_t>(i - 1)] == double(i),
                        "value(" + std::to_string(i) + ") != " + std::to_string(i) +
                            " exactly (c=" + std::to_string(c) + ")");
            if (c + 1 <= g.n) {
                const double expected = double(c) + 1.0 - 2.0 / (1.0 + std::exp(1.0));
                // Direct evaluation of the collapse graph K_{c-1} + K2.
                std::vector<Edge> one_edge{{0, 1}};
                const double direct = sp(make_graph(c + 1, one_edge));
                require_close(direct, expected, 1e-12, "collapse constant cross-check");
                require_close(curve.values[static_cast<std::size_t>(c)], expected, 1e-9,
                              "value(c+1)");
            }
        }
    });

    criterion(3, "invariance theorem suite (100 graphs, n <= 6)", 30.0, [] {
        Rng gen(777);
        int done = 0;
        while (done < 100) {
            Graph g = fixtures::random_graph(gen.int_in(2, 6), 0.5, gen);
            if (g.edges.empty()) continue;
            Graph h = relabel(g, fixtures::random_permutation(g.n, gen));
            auto sg = one_edge_contraction_spreads(g, Metric::kShortestPath);
            auto sh = one_edge_contraction_spreads(h, Metric::kShortestPath);
            std::sort(sg.begin(), sg.end());
            std::sort(sh.begin(), sh.end());
            require(sg.size() == sh.size(), "contraction counts differ");
            for (std::size_t i = 0; i < sg.size(); ++i)
                require_close(sg[i], sh[i], 1e-9, "one-edge contraction multiset");
            ++done;
        }
    });

    criterion(4, "expressivity suite (three witnesses + 50 controls)", 10.0, [] {
        const double tol = 1e-5;
        require(!distinguish_pair(fixtures::k23(), fixtures::house(),
                                  DistinguishMode::kSpreadOnly, Metric::kShortestPath, tol),
                "(G_A, house): spreads should agree");
        require(distinguish_pair(fixtures::k23(), fixtures::house(),
                                 DistinguishMode::kOneEdgeCurve, Metric::kShortestPath, tol),
                "(G_A, house): one-edge curves should differ");
        require(distinguish_pair(fixtures::cycle(6), fixtures::two_triangles(),
                                 DistinguishMode::kSpreadOnly, Metric::kShortestPath, tol),
                "(C6, C3+C3): spreads should differ");
        require(!distinguish_pair(fixtures::g_c(), fixtures::g_d(),
                                  DistinguishMode::kSpreadOnly, Metric::kShortestPath, tol),
                "(G_C, G_D): spreads should agree");
        require(distinguish_pair(fixtures::g_c(), fixtures::g_d(),
                                 DistinguishMode::kOneEdgeCurve, Metric::kShortestPath, tol),
                "(G_C, G_D): one-edge curves should differ");

        Rng gen(991);
        int done = 0;
        while (done < 50) {
            Graph g = fixtures::random_graph(gen.int_in(4, 8), 0.45, gen);
            if (g.edges.empty()) continue;
            Graph h = relabel(g, fixtures::random_permutation(g.n, gen));
            require(!distinguish_pair(g, h, DistinguishMode::kSpreadOnly,
                                      Metric::kShortestPath, tol),
                    "isomorphic control pair flagged by spread");
            require(!distinguish_pair(g, h, DistinguishMode::kOneEdgeCurve,
                                      Metric::kShortestPath, tol),
                    "isomorphic control pair flagged by one-edge curves");
            ++done;
        }
    });

    criterion(5, "perturbation tracking (remove rho=+1, add rho<=-0.9, 5 seeds)", 300.0, [] {
        std::vector<double> degrees;
        for (int i = 1; i <= 10; ++i) degrees.push_back(i / 10.0);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            Dataset ds;
            for (int i = 0; i < 40; ++i) {
                Rng rng(derive_stream(seed, kPhaseGenerate, static_cast<std::uint64_t>(i)));
                ds.graphs.push_back(generate_graph(ErModel{0.3}, rng.int_in(20, 40), rng, 0));
            }
            CoarseningConfig cfg;
            cfg.seed = seed;
            auto scales = auto_scales(ds);
            auto removed =
                perturbation_sweep(ds, PerturbKind::kRemoveEdge, degrees, scales, cfg, 0);
            require(removed.rho >= 1.0 - 1e-12,
                    "remove_edge rho = " + std::to_string(removed.rho) + " at seed " +
                        std::to_string(seed));
            auto added = perturbation_sweep(ds, PerturbKind::kAddEdge, degrees, scales, cfg, 0);
            require(added.rho <= -0.9, "add_edge rho = " + std::to_string(added.rho) +
                                           " at seed " + std::to_string(seed));
        }
    });

    criterion(6, "distribution separation (ER/RP/RG/SBM: kNN >= 0.80, silhouette >= 0.30)",
              600.0, [] {
                  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                      Dataset ds = four_model_dataset(seed);
                      auto scored = curves_and_distances(ds, seed);
                      Rng rng(derive_stream(seed, kPhaseFolds));
                      auto res = knn_cv_accuracy(scored.dist, scored.labels, 5, 10,
                                                 scored.sizes, rng);
                      require(res.mean_accuracy >= 0.80,
                              "kNN accuracy " + std::to_string(res.mean_accuracy) +
                                  " at seed " + std::to_string(seed));
                      const double sil = silhouette_score(scored.dist, scored.labels);
                      require(sil >= 0.30, "silhouette " + std::to_string(sil) + " at seed " +
                                               std::to_string(seed));
                  }
              });

    criterion(7, "parameter separation within ER (kNN >= 0.95)", 300.0, [] {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const std::vector<double> ps{0.1, 0.5, 0.9};
            Dataset ds;
            for (std::size_t ci = 0; ci < ps.size(); ++ci)
                for (int n = 10; n <= 29; ++n)
                    for (int k = 0; k < 3; ++k) {
                        Rng rng(derive_stream(derive_stream(seed, kPhaseGenerate, ci),
                                              static_cast<std::uint64_t>(n),
                                              static_cast<std::uint64_t>(k)));
                        ds.graphs.push_back(
                            generate_graph(ErModel{ps[ci]}, n, rng, static_cast<int>(ci)));
                    }
            auto scored = curves_and_distances(ds, seed);
            Rng rng(derive_stream(seed, kPhaseFolds));
            auto res = knn_cv_accuracy(scored.dist, scored.labels, 5, 10, scored.sizes, rng);
            require(res.mean_accuracy >= 0.95, "kNN accuracy " +
                                                   std::to_string(res.mean_accuracy) +
                                                   " at seed " + std::to_string(seed));
        }
    });

    criterion(8, "permutation-test calibration", 120.0, [] {
        // Separated groups: ER(0.75) vs RG(0.25), 20 curves each.
        CoarseningConfig cfg;
        cfg.seed = 99;
        Dataset er, rg;
        for (int n = 10; n <= 29; ++n) {
            Rng r1(derive_stream(1, kPhaseGenerate, static_cast<std::uint64_t>(n)));
            er.graphs.push_back(generate_graph(ErModel{0.75}, n, r1, 0));
            Rng r2(derive_stream(2, kPhaseGenerate, static_cast<std::uint64_t>(n)));
            rg.graphs.push_back(generate_graph(RgModel{0.25}, n, r2, 1));
        }
        std::vector<int> scales;
        for (int s = 1; s <= 29; ++s) scales.push_back(s);
        auto curves_er = compute_curves(er, scales, cfg, 0).curves;
        auto curves_rg = compute_curves(rg, scales, cfg, 0).curves;
        auto separated = permutation_test(curves_er, curves_rg, 1000, 7);
        require(separated.p_value <= 0.01,
                "ER-vs-RG p = " + std::to_string(separated.p_value));

        // Pseudo-count identity: exact equality on both extremes.
        require(separated.p_value ==
                    (1.0 + std::round(separated.p_value * 1001.0 - 1.0)) / 1001.0,
                "p-value does not satisfy the pseudo-count identity");
        auto tie = permutation_test({curves_er[0]}, {curves_er[0]}, 250, 3);
        require(tie.p_value == 1.0, "identical groups must tie at p = 1");

        // Null calibration: 50 random half-splits of one ER sample.
        Dataset pool;
        for (int i = 0; i < 40; ++i) {
            Rng rng(derive_stream(3, kPhaseGenerate, static_cast<std::uint64_t>(i)));
            pool.graphs.push_back(generate_graph(ErModel{0.75}, 10 + i % 20, rng, 0));
        }
        auto pool_curves = compute_curves(pool, scales, cfg, 0).curves;
        int high = 0;
        for (int trial = 0; trial < 50; ++trial) {
            Rng rng(derive_stream(4, kPhasePermTest, static_cast<std::uint64_t>(trial)));
            std::vector<std::size_t> idx(pool_curves.size());
            std::iota(idx.begin(), idx.end(), 0);
            rng.shuffle(idx);
            std::vector<DiversityCurve> a, b;
            for (std::size_t i = 0; i < idx.size(); ++i)
                (i < idx.size() / 2 ? a : b).push_back(pool_curves[idx[i]]);
            auto res = permutation_test(a, b, 1000, static_cast<std::uint64_t>(trial) + 100);
            if (res.p_value > 0.05) ++high;
        }
        require(high >= 45, "null calibration: only " + std::to_string(high) +
                                "/50 splits gave p > 0.05");
    });

    criterion(9, "property suites (bounds, invariance, oracles, determinism)", 60.0, [] {
        Rng gen(424242);
        // spread in [1, n]; curve values in [1, i].
        for (int trial = 0; trial < 30; ++trial) {
            Graph g = fixtures::random_graph(gen.int_in(1, 50), 0.15, gen);
            const double s = sp(g);
            require(s >= 1.0 - 1e-12 && s <= g.n + 1e-12, "spread out of [1, n]");
        }
        CoarseningConfig cfg;
        cfg.seed = 11;
        for (int trial = 0; trial < 10; ++trial) {
            Graph g = fixtures::random_graph(gen.int_in(2, 15), 0.3, gen);
            std::vector<int> scales;
            for (int s = 1; s <= g.n + 3; ++s) scales.push_back(s);
            auto curve = diversity_curve(g, scales, cfg, static_cast<std::uint64_t>(trial));
            for (std::size_t i = 0; i < scales.size(); ++i)
                require(curve.values[i] >= 1.0 - 1e-9 && curve.values[i] <= scales[i] + 1e-9,
                        "curve value out of [1, i]");
        }
        // Metric relabeling invariance (exact for shortest paths).
        for (int trial = 0; trial < 10; ++trial) {
            Graph g = fixtures::random_graph(gen.int_in(2, 20), 0.25, gen);
            auto perm = fixtures::random_permutation(g.n, gen);
            Graph h = relabel(g, perm);
            auto dg = shortest_path_matrix(g);
            auto dh = shortest_path_matrix(h);
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    require(dh(perm[i], perm[j]) == dg(i, j), "relabeling changed distances");
        }
        // BFS vs Floyd-Warshall.
        for (int trial = 0; trial < 10; ++trial) {
            Graph g = fixtures::random_graph(gen.int_in(1, 30), 0.15, gen);
            auto bfs = shortest_path_matrix(g);
            auto fw = oracles::floyd_warshall(g);
            for (int i = 0; i < g.n; ++i)
                for (int j = 0; j < g.n; ++j)
                    require(bfs(i, j) == fw(i, j), "BFS and Floyd-Warshall disagree");
        }
        // B1 * B2 = 0 on random complexes.
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Triangle> tris;
            const int n = gen.int_in(4, 9);
            for (int i = 0; i < 6; ++i) {
                int a = gen.int_in(0, n - 1), b = gen.int_in(0, n - 1), c = gen.int_in(0, n - 1);
                if (a == b || b == c || a == c) continue;
                Triangle t{a, b, c};
                std::sort(t.begin(), t.end());
                tris.push_back(t);
            }
            if (tris.empty()) tris.push_back({0, 1, 2});
            Triangulation t = make_triangulation(n, tris);
            require((boundary_operator(t, 1) * boundary_operator(t, 2)).cwiseAbs().maxCoeff() ==
                        0,
                    "B1 * B2 != 0");
        }
        // Seed determinism including thread-count independence.
        Dataset ds;
        for (int i = 0; i < 8; ++i) ds.graphs.push_back(fixtures::random_graph(12, 0.3, gen));
        CoarseningConfig dcfg;
        dcfg.seed = 2024;
        auto scales = auto_scales(ds);
        auto a = compute_curves(ds, scales, dcfg, 1);
        auto b = compute_curves(ds, scales, dcfg, 4);
        auto c = compute_curves(ds, scales, dcfg, 1);
        for (std::size_t i = 0; i < a.curves.size(); ++i) {
            require(a.curves[i].values == b.curves[i].values, "thread count changed results");
            require(a.curves[i].values == c.curves[i].values, "rerun changed results");
        }
    });

    criterion(10, "simplicial sanity (L0, heat fixture, Euler characteristic)", 10.0, [] {
        Rng gen(626);
        for (int trial = 0; trial < 10; ++trial) {
            const int n = gen.int_in(4, 9);
            std::vector<Triangle> tris;
            for (int i = 0; i < 5; ++i) {
                int a = gen.int_in(0, n - 1), b = gen.int_in(0, n - 1), c = gen.int_in(0, n - 1);
                if (a == b || b == c || a == c) continue;
                Triangle t{a, b, c};
                std::sort(t.begin(), t.end());
                tris.push_back(t);
            }
            if (tris.empty()) tris.push_back({0, 1, 2});
            Triangulation t = make_triangulation(n, tris);
            auto l0 = hodge_laplacian(t, 0);
            Graph skel = one_skeleton(t);
            auto deg = degrees(skel);
            for (int i = 0; i < skel.n; ++i)
                for (int j = 0; j < skel.n; ++j) {
                    const double expected =
                        i == j ? deg[i] : (skel.has_edge(i, j) ? -1.0 : 0.0);
                    require(l0(i, j) == expected, "L0 != graph Laplacian");
                }
        }
        const Triangulation solo = make_triangulation(3, {{0, 1, 2}});
        for (double t : {1.0, 20.0})
            require_close(hodge_heat_distance_matrix(solo, 2, t)(0, 0), std::exp(-3.0 * t), 1e-9,
                          "single-triangle heat entry");
        int done = 0;
        while (done < 20) {
            const int n = gen.int_in(3, 10);
            std::vector<Triangle> tris;
            for (int i = 0; i < 7; ++i) {
                int a = gen.int_in(0, n - 1), b = gen.int_in(0, n - 1), c = gen.int_in(0, n - 1);
                if (a == b || b == c || a == c) continue;
                Triangle t{a, b, c};
                std::sort(t.begin(), t.end());
                tris.push_back(t);
            }
            if (tris.empty()) continue;
            Triangulation t = make_triangulation(n, tris);
            require(euler_characteristic(barycentric_subdivision(t)) ==
                        euler_characteristic(t),
                    "barycentric subdivision changed the Euler characteristic");
            ++done;
        }
    });

    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures;
}
