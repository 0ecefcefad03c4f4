#include "divcurve/curve.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "divcurve/parallel.hpp"
#include "divcurve/spread.hpp"

namespace divcurve {

namespace {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

void check_scales(const Graph& g, const std::vector<int>& scales) {
    if (g.n < 1) throw ValidationError("diversity_curve: empty graph");
    if (scales.empty()) throw ValidationError("diversity_curve: empty scale set");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (scales[i] < 1) throw RangeError("diversity_curve: scales must be >= 1");
        if (i > 0 && scales[i] <= scales[i - 1])
            throw ValidationError("diversity_curve: scales must be strictly ascending");
    }
}

double eval_spread(const Graph& g, const CoarseningConfig& cfg) {
    return spread(metric_matrix(g, cfg.metric, cfg.time));
}

}  // namespace

std::string digest_hex(const std::string& key) {
    std::ostringstream hex;
    hex << std::hex;
    hex.width(16);
    hex.fill('0');
    hex << fnv1a64(key);
    return hex.str();
}

std::string config_digest(const CoarseningConfig& cfg) {
    std::ostringstream key;
    key << "metric=" << metric_name(cfg.metric) << ";scorer=" << scorer_name(cfg.scorer)
        << ";seed=" << cfg.seed << ";repeats=" << cfg.repeats << ";t=" << cfg.time;
    return digest_hex(key.str());
}

DiversityCurve diversity_curve_repeat(const Graph& g, const std::vector<int>& scales,
                                      const CoarseningConfig& cfg, std::uint64_t graph_index,
                                      int repeat_index) {
    check_scales(g, scales);
    if (cfg.metric == Metric::kFeature && !g.features)
        throw ConfigError("diversity_curve: feature metric on a featureless graph");

    std::vector<int> up, down;
    for (int s : scales)
        (s > g.n ? up : down).push_back(s);
    std::sort(down.rbegin(), down.rend());

    std::vector<double> values(scales.size(), 0.0);
    std::vector<bool> filled(scales.size(), false);
    auto slot = [&](int scale) {
        return static_cast<std::size_t>(
            std::lower_bound(scales.begin(), scales.end(), scale) - scales.begin());
    };
    auto eval_at = [&](int scale, const Graph& graph) {
        // DivCurve(G)_1 = 1 by definition; skip the metric entirely at scale 1.
        values[slot(scale)] = (scale == 1) ? 1.0 : eval_spread(graph, cfg);
        filled[slot(scale)] = true;
    };

    if (!up.empty()) {
        Rng rng(derive_stream(cfg.seed, graph_index, static_cast<std::uint64_t>(repeat_index),
                              kPhaseUpsample));
        for (const auto& [target, graph] : upsample_node_sequence(g, up, rng))
            eval_at(target, graph);
    }
    if (!down.empty()) {
        Rng rng(derive_stream(cfg.seed, graph_index, static_cast<std::uint64_t>(repeat_index),
                              kPhaseCoarsen));
        auto steps = coarsen_sequence(g, down, EdgeScorer{cfg.scorer, cfg.metric, cfg.time}, rng);
        std::vector<int> unreached;
        int floor_card = 0;
        double floor_value = 0.0;
        for (const auto& step : steps) {
            if (step.reached) {
                eval_at(step.target, step.graph);
            } else {
                unreached.push_back(step.target);
                if (floor_card == 0) {
                    floor_card = step.graph.n;  // the component count
                    floor_value = eval_spread(step.graph, cfg);
                }
            }
        }
        // Scales below the component count interpolate between (1, 1) and the
        // lowest reached point (the fully collapsed graph).
        for (int s : unreached) {
            double slope = (floor_value - 1.0) / static_cast<double>(floor_card - 1);
            values[slot(s)] = (s == 1) ? 1.0 : 1.0 + slope * static_cast<double>(s - 1);
            filled[slot(s)] = true;
        }
    }

    // Cannot happen under the algorithm, but never extrapolate silently.
    for (std::size_t i = 0; i < filled.size(); ++i)
        if (!filled[i])
            throw NumericError("diversity_curve: scale " + std::to_string(scales[i]) +
                               " was never visited");

    DiversityCurve curve;
    curve.scales = scales;
    curve.values = std::move(values);
    curve.repeats = 1;
    curve.config_digest = config_digest(cfg);
    return curve;
}

DiversityCurve diversity_curve(const Graph& g, const std::vector<int>& scales,
                               const CoarseningConfig& cfg, std::uint64_t graph_index) {
    if (cfg.repeats < 1) throw ConfigError("diversity_curve: repeats must be >= 1");
    std::vector<double> sums(scales.size(), 0.0);
    for (int r = 0; r < cfg.repeats; ++r) {
        auto rep = diversity_curve_repeat(g, scales, cfg, graph_index, r);
        for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += rep.values[i];
    }
    DiversityCurve curve;
    curve.scales = scales;
    curve.values.resize(scales.size());
    for (std::size_t i = 0; i < sums.size(); ++i)
        curve.values[i] = sums[i] / static_cast<double>(cfg.repeats);
    if (!scales.empty() && scales.front() == 1) curve.values.front() = 1.0;
    curve.repeats = cfg.repeats;
    curve.config_digest = config_digest(cfg);
    return curve;
}

DiversityCurve average_curves(const std::vector<DiversityCurve>& curves) {
    if (curves.empty()) throw ValidationError("average_curves: no curves");
    const auto& scales = curves.front().scales;
    for (const auto& c : curves)
        if (c.scales != scales) throw ValidationError("average_curves: scale mismatch");

    DiversityCurve out;
    out.scales = scales;
    out.values.assign(scales.size(), 0.0);
    out.repeats = 0;
    out.config_digest = curves.front().config_digest;
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += c.values[i];
        out.repeats += c.repeats;
    }
    for (double& v : out.values) v /= static_cast<double>(curves.size());
    return out;
}

std::vector<double> one_edge_contraction_spreads(const Graph& g, Metric metric, double t) {
    std::vector<double> out;
    for (const Graph& contracted : one_edge_contractions(g))
        out.push_back(spread(metric_matrix(contracted, metric, t)));
    return out;
}

std::vector<int> auto_scales(const Dataset& ds) {
    int max_n = 0;
    for (const auto& g : ds.graphs) max_n = std::max(max_n, g.n);
    if (max_n < 1) throw ValidationError("auto_scales: dataset has no non-empty graph");
    std::vector<int> scales(static_cast<std::size_t>(max_n));
    for (int i = 0; i < max_n; ++i) scales[static_cast<std::size_t>(i)] = i + 1;
    return scales;
}

CurveSet compute_curves(const Dataset& ds, const std::vector<int>& scales,
                        const CoarseningConfig& cfg, int threads) {
    if (cfg.repeats < 1) throw ConfigError("compute_curves: repeats must be >= 1");
    const std::size_t n_graphs = ds.graphs.size();
    const std::size_t n_repeats = static_cast<std::size_t>(cfg.repeats);

    // One task per (graph, repeat); every task owns a pre-derived RNG stream
    // and its own output slot, so scheduling order cannot leak into results.
    std::vector<std::vector<double>> partial(n_graphs * n_repeats);
    parallel_for(n_graphs * n_repeats, threads, [&](std::size_t task) {
        const std::size_t gi = task / n_repeats;
        const int r = static_cast<int>(task % n_repeats);
        partial[task] =
            diversity_curve_repeat(ds.graphs[gi], scales, cfg, gi, r).values;
    });

    CurveSet set;
    set.scales = scales;
    set.curves.resize(n_graphs);
    set.labels.resize(n_graphs);
    set.graph_sizes.resize(n_graphs);
    const std::string digest = config_digest(cfg);
    for (std::size_t gi = 0; gi < n_graphs; ++gi) {
        DiversityCurve& c = set.curves[gi];
        c.scales = scales;
        c.values.assign(scales.size(), 0.0);
        for (std::size_t r = 0; r < n_repeats; ++r)
            for (std::size_t i = 0; i < scales.size(); ++i)
                c.values[i] += partial[gi * n_repeats + r][i];
        for (double& v : c.values) v /= static_cast<double>(cfg.repeats);
        if (!scales.empty() && scales.front() == 1) c.values.front() = 1.0;
        c.repeats = cfg.repeats;
        c.config_digest = digest;
        set.labels[gi] = ds.graphs[gi].label;
        set.graph_sizes[gi] = ds.graphs[gi].n;
    }
    return set;
}

void write_curves_csv(std::ostream& out, const CurveSet& set) {
    out << "# config_digest="
        << (set.curves.empty() ? std::string("none") : set.curves.front().config_digest) << '\n';
    out << "graph_id,scale,value\n";
    out.precision(17);
    for (std::size_t gi = 0; gi < set.curves.size(); ++gi)
        for (std::size_t i = 0; i < set.scales.size(); ++i)
            out << gi << ',' << set.scales[i] << ',' << set.curves[gi].values[i] << '\n';
}

void write_curves_jsonl(std::ostream& out, const CurveSet& set) {
    for (std::size_t gi = 0; gi < set.curves.size(); ++gi) {
        json j;
        j["graph_id"] = gi;
        j["scales"] = set.scales;
        j["values"] = set.curves[gi].values;
        j["repeats"] = set.curves[gi].repeats;
        j["config_digest"] = set.curves[gi].config_digest;
        j["n"] = set.graph_sizes[gi];
        if (set.labels[gi]) j["label"] = *set.labels[gi];
        out << j.dump() << '\n';
    }
}

CurveSet load_curves_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open curve file: " + path);
    CurveSet set;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError("curves jsonl: " + std::string(e.what()) + " (line " +
                             std::to_string(line_no) + ")");
        }
        DiversityCurve c;
        c.scales = j.at("scales").get<std::vector<int>>();
        c.values = j.at("values").get<std::vector<double>>();
        c.repeats = j.value("repeats", 1);
        c.config_digest = j.value("config_digest", std::string());
        if (c.config_digest.empty())
            throw ValidationError("curves jsonl: missing config_digest (line " +
                                  std::to_string(line_no) + ")");
        if (c.scales.size() != c.values.size())
            throw ValidationError("curves jsonl: scales/values length mismatch (line " +
                                  std::to_string(line_no) + ")");
        if (set.curves.empty())
            set.scales = c.scales;
        else if (c.scales != set.scales)
            throw ValidationError("curves jsonl: inconsistent scales (line " +
                                  std::to_string(line_no) + ")");
        set.labels.push_back(j.contains("label") && !j["label"].is_null()
                                 ? std::optional<int>(j["label"].get<int>())
                                 : std::nullopt);
        set.graph_sizes.push_back(j.value("n", 0));
        set.curves.push_back(std::move(c));
    }
    return set;
}

}  // namespace divcurve
