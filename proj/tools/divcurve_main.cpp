// divcurve: diversity curves for graph datasets.
//
// Subcommands: generate | convert | curve | analyze {dist, permtest, knn,
// silhouette, spearman, distinguish, sweep}. Every command is a pure function
// of (inputs, config): outputs are byte-identical for the same seed, whatever
// the thread count, and every output embeds the config digest.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "divcurve/analysis.hpp"
#include "divcurve/curve.hpp"
#include "divcurve/dataset_io.hpp"
#include "divcurve/genperturb.hpp"
#include "divcurve/parallel.hpp"
#include "divcurve/simplicial.hpp"
#include "divcurve/spread.hpp"

namespace dc = divcurve;
using nlohmann::json;

namespace {

struct RunConfig {
    std::uint64_t seed = 0;
    int repeats = 3;
    std::string metric = "shortest-path";
    std::string scorer = "random";
    std::string scales = "auto";
    double time = 1.0;
    double p_norm = 2.0;
    double tolerance = 1e-5;
    int perms = 1000;
    int threads = 0;  // 0 = auto (DIVCURVE_THREADS or hardware)
};

void add_config_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--seed", cfg.seed, "base RNG seed");
    cmd->add_option("--repeats", cfg.repeats, "coarsening repeats per curve");
    cmd->add_option("--metric", cfg.metric, "shortest-path | feature | diffusion | heat");
    cmd->add_option("--scorer", cfg.scorer, "random | spread-exact | spread-approx");
    cmd->add_option("--scales", cfg.scales, "auto or min:max[:step]");
    cmd->add_option("--time", cfg.time, "time parameter for spectral metrics");
    cmd->add_option("--p-norm", cfg.p_norm, "curve distance norm order (inf allowed)");
    cmd->add_option("--tolerance", cfg.tolerance, "distinguishing tolerance");
    cmd->add_option("--perms", cfg.perms, "permutation count for permtest");
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
}

dc::CoarseningConfig coarsening_config(const RunConfig& cfg) {
    dc::CoarseningConfig out;
    out.scorer = dc::scorer_from_string(cfg.scorer);
    out.metric = dc::metric_from_string(cfg.metric);
    out.time = cfg.time;
    out.repeats = cfg.repeats;
    out.seed = cfg.seed;
    return out;
}

std::vector<int> resolve_scales(const std::string& spec, const dc::Dataset& ds) {
    if (spec == "auto") return dc::auto_scales(ds);
    std::vector<int> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(std::stoi(tok));
    if (parts.size() < 2 || parts.size() > 3)
        throw dc::ConfigError("scales must be \"auto\" or min:max[:step]");
    int lo = parts[0], hi = parts[1], step = parts.size() == 3 ? parts[2] : 1;
    if (lo < 1 || hi < lo || step < 1) throw dc::RangeError("invalid scale range");
    std::vector<int> scales;
    for (int s = lo; s <= hi; s += step) scales.push_back(s);
    return scales;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw dc::IoError("cannot write file: " + path);
    out << content;
}

void emit_report(const json& report, const std::string& out_path) {
    std::string text = report.dump(2) + "\n";
    if (!out_path.empty())
        write_text_file(out_path, text);
    else
        std::cout << text;
}

dc::GraphModel model_from_manifest(const std::string& name, const json& params) {
    dc::GraphModel model = dc::model_from_string(name);
    if (auto* er = std::get_if<dc::ErModel>(&model)) {
        er->p = params.value("p", er->p);
    } else if (auto* rp = std::get_if<dc::RpModel>(&model)) {
        rp->communities = params.value("communities", rp->communities);
        rp->p_in = params.value("p_in", rp->p_in);
        rp->p_out = params.value("p_out", rp->p_out);
    } else if (auto* rg = std::get_if<dc::RgModel>(&model)) {
        rg->radius = params.value("r", params.value("radius", rg->radius));
        rg->keep_coordinates = params.value("keep_coordinates", false);
    } else if (auto* sbm = std::get_if<dc::SbmModel>(&model)) {
        sbm->communities = params.value("communities", sbm->communities);
        sbm->p_in = params.value("p_in", sbm->p_in);
        sbm->p_out = params.value("p_out", sbm->p_out);
    }
    return model;
}

// Manifest: one spec object or an array of them. Fields: model, n_range
// [lo, hi], per_size, params{...}, label (defaults to the spec index).
dc::Dataset dataset_from_manifest(const json& manifest, std::uint64_t seed) {
    std::vector<json> specs;
    if (manifest.is_array())
        specs.assign(manifest.begin(), manifest.end());
    else
        specs.push_back(manifest);

    dc::Dataset ds;
    for (std::size_t si = 0; si < specs.size(); ++si) {
        const json& spec = specs[si];
        const auto model =
            model_from_manifest(spec.at("model").get<std::string>(), spec.value("params", json::object()));
        const auto range = spec.at("n_range");
        const int lo = range.at(0).get<int>(), hi = range.at(1).get<int>();
        const int per_size = spec.value("per_size", 1);
        const int label = spec.value("label", static_cast<int>(si));
        if (lo < 1 || hi < lo) throw dc::RangeError("manifest: invalid n_range");
        for (int n = lo; n <= hi; ++n)
            for (int k = 0; k < per_size; ++k) {
                dc::Rng rng(dc::derive_stream(
                    dc::derive_stream(seed, dc::kPhaseGenerate, si),
                    static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)));
                ds.graphs.push_back(dc::generate_graph(model, n, rng, label));
            }
    }
    return ds;
}

int cmd_generate(const RunConfig& cfg, const std::string& manifest_path,
                 const std::string& out_path) {
    std::ifstream in(manifest_path);
    if (!in) throw dc::IoError("cannot open manifest: " + manifest_path);
    json manifest;
    try {
        in >> manifest;
    } catch (const json::exception& e) {
        throw dc::ParseError(std::string("manifest: ") + e.what());
    }
    dc::Dataset ds = dataset_from_manifest(manifest, cfg.seed);
    dc::save_jsonl_dataset(out_path, ds);

    json echo;
    echo["manifest"] = manifest;
    echo["seed"] = cfg.seed;
    echo["graphs"] = ds.graphs.size();
    echo["config_digest"] = dc::config_digest(coarsening_config(cfg));
    write_text_file(out_path + ".manifest.json", echo.dump(2) + "\n");
    std::cout << "wrote " << ds.graphs.size() << " graphs to " << out_path << "\n";
    return 0;
}

int cmd_convert(const std::string& tu_prefix, const std::string& edge_list_path,
                const std::string& out_path) {
    dc::Dataset ds;
    if (!tu_prefix.empty()) {
        auto slurp = [](const std::string& path) {
            std::ifstream in(path);
            if (!in) throw dc::IoError("cannot open file: " + path);
            std::ostringstream buf;
            buf << in.rdbuf();
            return buf.str();
        };
        auto maybe = [&](const std::string& path) -> std::optional<std::string> {
            if (!std::filesystem::exists(path)) return std::nullopt;
            return slurp(path);
        };
        ds = dc::parse_tu_dataset(slurp(tu_prefix + "_A.txt"),
                                  slurp(tu_prefix + "_graph_indicator.txt"),
                                  maybe(tu_prefix + "_graph_labels.txt"),
                                  maybe(tu_prefix + "_node_attributes.txt"));
    } else {
        std::ifstream in(edge_list_path);
        if (!in) throw dc::IoError("cannot open edge list: " + edge_list_path);
        std::ostringstream buf;
        buf << in.rdbuf();
        ds.graphs.push_back(dc::parse_edge_list(buf.str()));
    }
    dc::save_jsonl_dataset(out_path, ds);
    std::cout << "wrote " << ds.graphs.size() << " graphs to " << out_path << "\n";
    return 0;
}

// Spread-function baseline: spread of the unchanged graph under the metric
// scaled by t, over 20 evenly spaced t in [1, 5].
int cmd_spread_function(const RunConfig& cfg, const dc::Dataset& ds,
                        const std::string& csv_path, const std::string& jsonl_path) {
    const auto metric = dc::metric_from_string(cfg.metric);
    const auto grid = dc::default_spread_function_grid();
    const std::string digest =
        dc::digest_hex("spread-function;metric=" + cfg.metric + ";t=" + std::to_string(cfg.time));

    std::ostringstream csv, jsonl;
    csv << "# config_digest=" << digest << "\ngraph_id,t,value\n";
    csv.precision(17);
    for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi) {
        auto values =
            dc::spread_function(dc::metric_matrix(ds.graphs[gi], metric, cfg.time), grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            csv << gi << ',' << grid[i] << ',' << values[i] << '\n';
        json j;
        j["graph_id"] = gi;
        j["ts"] = grid;
        j["values"] = values;
        j["config_digest"] = digest;
        j["n"] = ds.graphs[gi].n;
        if (ds.graphs[gi].label) j["label"] = *ds.graphs[gi].label;
        jsonl << j.dump() << '\n';
    }
    if (!csv_path.empty()) write_text_file(csv_path, csv.str());
    if (!jsonl_path.empty()) write_text_file(jsonl_path, jsonl.str());
    if (csv_path.empty() && jsonl_path.empty()) std::cout << csv.str();
    return 0;
}

int cmd_curve(const RunConfig& cfg, const std::string& data_path, const std::string& csv_path,
              const std::string& jsonl_path, const std::string& debug_dir,
              bool spread_function_mode) {
    dc::Dataset ds = dc::load_jsonl_dataset(data_path);
    if (spread_function_mode) return cmd_spread_function(cfg, ds, csv_path, jsonl_path);
    auto scales = resolve_scales(cfg.scales, ds);
    auto ccfg = coarsening_config(cfg);
    dc::CurveSet set = dc::compute_curves(ds, scales, ccfg, cfg.threads);

    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw dc::IoError("cannot write file: " + csv_path);
        dc::write_curves_csv(out, set);
    }
    if (!jsonl_path.empty()) {
        std::ofstream out(jsonl_path);
        if (!out) throw dc::IoError("cannot write file: " + jsonl_path);
        dc::write_curves_jsonl(out, set);
    }
    if (csv_path.empty() && jsonl_path.empty()) dc::write_curves_csv(std::cout, set);

    if (!debug_dir.empty()) {
        std::filesystem::create_directories(debug_dir);
        for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi) {
            const dc::Graph& g = ds.graphs[gi];
            write_text_file(debug_dir + "/dist_" + std::to_string(gi) + ".csv",
                            dc::metric_matrix(g, ccfg.metric, ccfg.time).to_csv());
            // Intermediate coarsened graphs of repeat 0, one JSONL per graph.
            std::vector<int> down;
            for (int s : scales)
                if (s <= g.n) down.push_back(s);
            std::sort(down.rbegin(), down.rend());
            dc::Rng rng(dc::derive_stream(ccfg.seed, gi, 0, dc::kPhaseCoarsen));
            std::ostringstream lines;
            for (const auto& step : dc::coarsen_sequence(
                     g, down, {ccfg.scorer, ccfg.metric, ccfg.time}, rng))
                lines << dc::graph_to_json_line(step.graph) << '\n';
            write_text_file(debug_dir + "/coarse_" + std::to_string(gi) + ".jsonl", lines.str());
        }
    }
    return 0;
}

// Curves over triangulations: spread of the Hodge heat table between the
// k-simplices, tracked across triangular upsampling to each node-count scale
// at or above the complex size (triangulations are never contracted).
int cmd_hodge(const RunConfig& cfg, const std::string& tri_path, int k, double time,
              const std::string& scales_spec, const std::string& csv_path,
              const std::string& jsonl_path) {
    auto complexes = dc::load_jsonl_triangulations(tri_path);
    if (complexes.empty()) throw dc::ValidationError("hodge: no triangulations");

    std::vector<int> scales;
    if (scales_spec == "auto") {
        int max_n = 0;
        for (const auto& t : complexes) max_n = std::max(max_n, t.n);
        for (int s = 1; s <= max_n; ++s) scales.push_back(s);
    } else {
        dc::Dataset dummy;
        dummy.graphs.push_back(dc::make_graph(1, {}));
        scales = resolve_scales(scales_spec, dummy);
    }

    const std::string digest =
        dc::digest_hex("hodge;k=" + std::to_string(k) + ";time=" + std::to_string(time) +
                       ";seed=" + std::to_string(cfg.seed) +
                       ";repeats=" + std::to_string(cfg.repeats));
    std::ostringstream csv, jsonl;
    csv << "# config_digest=" << digest << "\ncomplex_id,scale,value\n";
    csv.precision(17);
    for (std::size_t ci = 0; ci < complexes.size(); ++ci) {
        const auto& base = complexes[ci];
        std::vector<int> targets;
        for (int s : scales)
            if (s >= base.n) targets.push_back(s);
        std::vector<double> sums(targets.size(), 0.0);
        for (int r = 0; r < cfg.repeats; ++r) {
            dc::Rng rng(dc::derive_stream(cfg.seed, ci, static_cast<std::uint64_t>(r),
                                          dc::kPhaseUpsample));
            dc::Triangulation current = base;
            for (std::size_t ti = 0; ti < targets.size(); ++ti) {
                current = dc::triangular_upsample(current, targets[ti], rng);
                sums[ti] += dc::spread(dc::hodge_heat_distance_matrix(current, k, time));
            }
        }
        json j;
        j["complex_id"] = ci;
        j["scales"] = targets;
        std::vector<double> values;
        for (std::size_t ti = 0; ti < targets.size(); ++ti) {
            values.push_back(sums[ti] / cfg.repeats);
            csv << ci << ',' << targets[ti] << ',' << values.back() << '\n';
        }
        j["values"] = values;
        j["repeats"] = cfg.repeats;
        j["config_digest"] = digest;
        j["n"] = base.n;
        if (base.label) j["label"] = *base.label;
        jsonl << j.dump() << '\n';
    }
    if (!csv_path.empty()) write_text_file(csv_path, csv.str());
    if (!jsonl_path.empty()) write_text_file(jsonl_path, jsonl.str());
    if (csv_path.empty() && jsonl_path.empty()) std::cout << csv.str();
    return 0;
}

int cmd_analyze_dist(const RunConfig& cfg, const std::string& curves_path,
                     const std::string& out_path) {
    dc::CurveSet set = dc::load_curves_jsonl(curves_path);
    dc::DistMatrix d = dc::curve_distance_matrix(set, cfg.p_norm);
    std::string csv = "# config_digest=" +
                      (set.curves.empty() ? std::string("none") : set.curves[0].config_digest) +
                      "\n" + d.to_csv();
    if (!out_path.empty())
        write_text_file(out_path, csv);
    else
        std::cout << csv;
    return 0;
}

int cmd_analyze_permtest(const RunConfig& cfg, const std::string& a_path,
                         const std::string& b_path, const std::string& out_path) {
    dc::CurveSet a = dc::load_curves_jsonl(a_path);
    dc::CurveSet b = dc::load_curves_jsonl(b_path);
    dc::TestResult res = dc::permutation_test(a.curves, b.curves, cfg.perms, cfg.seed);
    json report;
    report["statistic"] = res.statistic;
    report["p_value"] = res.p_value;
    report["permutations"] = res.permutations;
    report["seed"] = cfg.seed;
    report["config_digest"] = dc::config_digest(coarsening_config(cfg));
    emit_report(report, out_path);
    return 0;
}

int cmd_analyze_knn(const RunConfig& cfg, const std::string& curves_path, int k, int folds,
                    bool group_by_size, const std::string& out_path) {
    dc::CurveSet set = dc::load_curves_jsonl(curves_path);
    std::vector<int> labels;
    for (const auto& l : set.labels) {
        if (!l) throw dc::ValidationError("knn: every curve needs a label");
        labels.push_back(*l);
    }
    dc::DistMatrix d = dc::curve_distance_matrix(set, cfg.p_norm);
    dc::Rng rng(dc::derive_stream(cfg.seed, dc::kPhaseFolds));
    auto res = dc::knn_cv_accuracy(
        d, labels, k, folds,
        group_by_size ? std::optional<std::vector<int>>(set.graph_sizes) : std::nullopt, rng);
    json report;
    report["mean_accuracy"] = res.mean_accuracy;
    report["std_accuracy"] = res.std_accuracy;
    report["k"] = k;
    report["folds"] = folds;
    report["grouped"] = group_by_size;
    report["seed"] = cfg.seed;
    report["config_digest"] = dc::config_digest(coarsening_config(cfg));
    emit_report(report, out_path);
    return 0;
}

int cmd_analyze_silhouette(const RunConfig& cfg, const std::string& curves_path, int resamples,
                           double resample_fraction, const std::string& out_path) {
    dc::CurveSet set = dc::load_curves_jsonl(curves_path);
    std::vector<int> labels;
    for (const auto& l : set.labels) {
        if (!l) throw dc::ValidationError("silhouette: every curve needs a label");
        labels.push_back(*l);
    }
    dc::DistMatrix d = dc::curve_distance_matrix(set, cfg.p_norm);
    json report;
    report["silhouette"] = dc::silhouette_score(d, labels);
    if (resamples > 0) {
        auto [mean, std] =
            dc::silhouette_resampled(d, labels, resamples, resample_fraction, cfg.seed);
        report["resampled_mean"] = mean;
        report["resampled_std"] = std;
        report["resamples"] = resamples;
        report["resample_fraction"] = resample_fraction;
    }
    report["seed"] = cfg.seed;
    report["config_digest"] = dc::config_digest(coarsening_config(cfg));
    emit_report(report, out_path);
    return 0;
}

int cmd_analyze_spearman(const RunConfig& cfg, const std::string& table_path,
                         const std::string& out_path) {
    std::ifstream in(table_path);
    if (!in) throw dc::IoError("cannot open table: " + table_path);
    std::vector<double> xs, ys;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string sx, sy;
        if (!std::getline(ss, sx, ',') || !std::getline(ss, sy, ','))
            throw dc::ParseError("spearman table: expected \"x,y\" (line " +
                                 std::to_string(line_no) + ")");
        try {
            xs.push_back(std::stod(sx));
            ys.push_back(std::stod(sy));
        } catch (const std::exception&) {
            if (line_no == 1) {  // tolerate a header row
                continue;
            }
            throw dc::ParseError("spearman table: expected reals (line " +
                                 std::to_string(line_no) + ")");
        }
    }
    json report;
    report["rho"] = dc::spearman(xs, ys);
    report["points"] = xs.size();
    report["seed"] = cfg.seed;
    report["config_digest"] = dc::config_digest(coarsening_config(cfg));
    emit_report(report, out_path);
    return 0;
}

dc::Graph load_single_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dc::IoError("cannot open graph: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (!text.empty() && text[0] == '{') {
        std::istringstream stream(text);
        dc::Dataset ds = dc::parse_jsonl_dataset(stream);
        if (ds.graphs.size() != 1)
            throw dc::ValidationError("expected exactly one graph in " + path);
        return ds.graphs[0];
    }
    return dc::parse_edge_list(text);
}

int cmd_analyze_distinguish(const RunConfig& cfg, const std::string& a_path,
                            const std::string& b_path, const std::string& out_path) {
    dc::Graph a = load_single_graph(a_path);
    dc::Graph b = load_single_graph(b_path);
    const dc::Metric metric = dc::metric_from_string(cfg.metric);
    json report;
    report["spread_only"] = dc::distinguish_pair(a, b, dc::DistinguishMode::kSpreadOnly, metric,
                                                 cfg.tolerance, cfg.time);
    if (a.n == b.n && a.n <= 12)
        report["one_edge_curve"] = dc::distinguish_pair(
            a, b, dc::DistinguishMode::kOneEdgeCurve, metric, cfg.tolerance, cfg.time);
    else
        report["one_edge_curve"] = nullptr;
    report["tolerance"] = cfg.tolerance;
    report["metric"] = cfg.metric;
    report["seed"] = cfg.seed;
    report["config_digest"] = dc::config_digest(coarsening_config(cfg));
    emit_report(report, out_path);
    return 0;
}

int cmd_analyze_sweep(const RunConfig& cfg, const std::string& data_path,
                      const std::string& scenario, const std::string& degrees_spec,
                      const std::string& csv_path, const std::string& out_path) {
    dc::Dataset ds = dc::load_jsonl_dataset(data_path);
    std::vector<double> degrees;
    {
        std::stringstream ss(degrees_spec);
        std::string tok;
        std::vector<double> parts;
        while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
        if (parts.size() == 3) {
            for (double d = parts[0]; d <= parts[1] + 1e-12; d += parts[2])
                degrees.push_back(d);
        } else {
            std::stringstream cs(degrees_spec);
            while (std::getline(cs, tok, ',')) degrees.push_back(std::stod(tok));
        }
    }
    auto scales = resolve_scales(cfg.scales, ds);
    dc::SweepResult res = dc::perturbation_sweep(ds, dc::perturb_kind_from_string(scenario),
                                                 degrees, scales, coarsening_config(cfg),
                                                 cfg.threads);
    std::ostringstream csv;
    csv << "# config_digest=" << dc::config_digest(coarsening_config(cfg)) << "\n";
    csv << "scenario,degree,mean_norm\n";
    csv.precision(12);
    for (std::size_t i = 0; i < res.degrees.size(); ++i)
        csv << scenario << ',' << res.degrees[i] << ',' << res.mean_norms[i] << '\n';
    if (!csv_path.empty())
        write_text_file(csv_path, csv.str());
    else
        std::cout << csv.str();

    json report;
    report["scenario"] = scenario;
    report["rho"] = res.rho;
    report["seed"] = cfg.seed;
    report["config_digest"] = dc::config_digest(coarsening_config(cfg));
    emit_report(report, out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diversity curves: spread across an edge-contraction coarsening hierarchy"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::string manifest_path, out_path, data_path, csv_path, jsonl_path, debug_dir;
    std::string curves_path, a_path, b_path, table_path, scenario = "remove_edge";
    std::string degrees_spec = "0.1:1.0:0.1", tu_prefix, edge_list_path, tri_path;
    int k = 5, folds = 10, hodge_k = 2;
    double hodge_time = 20.0;
    bool group_by_size = false, spread_function_mode = false;

    auto* gen = app.add_subcommand("generate", "sample a dataset from a generator manifest");
    add_config_flags(gen, cfg);
    gen->add_option("--manifest", manifest_path, "manifest JSON path")->required();
    gen->add_option("--out", out_path, "output dataset JSONL")->required();

    auto* conv = app.add_subcommand("convert", "convert TU or edge-list input to JSONL");
    conv->add_option("--tu-prefix", tu_prefix, "TU dataset path prefix (DIR/DS)");
    conv->add_option("--edge-list", edge_list_path, "edge-list text file");
    conv->add_option("--out", out_path, "output dataset JSONL")->required();

    auto* curve = app.add_subcommand("curve", "compute diversity curves for a dataset");
    add_config_flags(curve, cfg);
    curve->add_option("--data", data_path, "dataset JSONL")->required();
    curve->add_option("--csv", csv_path, "curve CSV output path");
    curve->add_option("--jsonl", jsonl_path, "curve JSONL output path");
    curve->add_option("--debug-dump-dir", debug_dir,
                      "dump distance matrices and coarsened graphs here");
    curve->add_flag("--spread-function", spread_function_mode,
                    "emit the spread-function baseline instead of coarsening curves");

    auto* hodge = app.add_subcommand("hodge", "curves over triangulations via Hodge heat tables");
    add_config_flags(hodge, cfg);
    hodge->add_option("--triangulations", tri_path, "triangulation JSONL")->required();
    hodge->add_option("--k", hodge_k, "simplex dimension (0, 1 or 2)");
    hodge->add_option("--hodge-time", hodge_time, "heat time parameter");
    hodge->add_option("--csv", csv_path, "CSV output path");
    hodge->add_option("--jsonl", jsonl_path, "JSONL output path");

    auto* analyze = app.add_subcommand("analyze", "analysis over curves and graphs");
    analyze->require_subcommand(1);

    auto* dist = analyze->add_subcommand("dist", "pairwise curve distance matrix");
    add_config_flags(dist, cfg);
    dist->add_option("--curves", curves_path, "curve JSONL")->required();
    dist->add_option("--out", out_path, "output CSV path");

    auto* permtest = analyze->add_subcommand("permtest", "two-sample permutation test");
    add_config_flags(permtest, cfg);
    permtest->add_option("--curves-a", a_path, "group A curve JSONL")->required();
    permtest->add_option("--curves-b", b_path, "group B curve JSONL")->required();
    permtest->add_option("--out", out_path, "report JSON path");

    auto* knn = analyze->add_subcommand("knn", "kNN cross-validated accuracy");
    add_config_flags(knn, cfg);
    knn->add_option("--curves", curves_path, "curve JSONL with labels")->required();
    knn->add_option("--k", k, "neighbour count");
    knn->add_option("--folds", folds, "fold count");
    knn->add_flag("--group-by-size", group_by_size, "never split a node-size group across folds");
    knn->add_option("--out", out_path, "report JSON path");

    int resamples = 0;
    double resample_fraction = 0.5;
    auto* silh = analyze->add_subcommand("silhouette", "silhouette score of labelled curves");
    add_config_flags(silh, cfg);
    silh->add_option("--curves", curves_path, "curve JSONL with labels")->required();
    silh->add_option("--resamples", resamples, "also report mean/std over random subsets");
    silh->add_option("--resample-fraction", resample_fraction, "subset fraction (default 0.5)");
    silh->add_option("--out", out_path, "report JSON path");

    auto* spear = analyze->add_subcommand("spearman", "rank correlation of a two-column table");
    add_config_flags(spear, cfg);
    spear->add_option("--table", table_path, "CSV with x,y columns")->required();
    spear->add_option("--out", out_path, "report JSON path");

    auto* disting = analyze->add_subcommand("distinguish", "tolerance-based pair distinguisher");
    add_config_flags(disting, cfg);
    disting->add_option("--a", a_path, "first graph (edge list or JSONL)")->required();
    disting->add_option("--b", b_path, "second graph (edge list or JSONL)")->required();
    disting->add_option("--out", out_path, "report JSON path");

    auto* sweep = analyze->add_subcommand("sweep", "perturbation sweep with Spearman tracking");
    add_config_flags(sweep, cfg);
    sweep->add_option("--data", data_path, "dataset JSONL")->required();
    sweep->add_option("--scenario", scenario, "add_edge | remove_edge | rewire_edge | swap_edge");
    sweep->add_option("--degrees", degrees_spec, "lo:hi:step or comma list");
    sweep->add_option("--csv", csv_path, "sweep CSV output path");
    sweep->add_option("--out", out_path, "report JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_generate(cfg, manifest_path, out_path);
        if (conv->parsed()) {
            if (tu_prefix.empty() == edge_list_path.empty())
                throw dc::ConfigError("convert: give exactly one of --tu-prefix, --edge-list");
            return cmd_convert(tu_prefix, edge_list_path, out_path);
        }
        if (curve->parsed())
            return cmd_curve(cfg, data_path, csv_path, jsonl_path, debug_dir,
                             spread_function_mode);
        if (hodge->parsed())
            return cmd_hodge(cfg, tri_path, hodge_k, hodge_time, cfg.scales, csv_path,
                             jsonl_path);
        if (dist->parsed()) return cmd_analyze_dist(cfg, curves_path, out_path);
        if (permtest->parsed()) return cmd_analyze_permtest(cfg, a_path, b_path, out_path);
        if (knn->parsed())
            return cmd_analyze_knn(cfg, curves_path, k, folds, group_by_size, out_path);
        if (silh->parsed())
            return cmd_analyze_silhouette(cfg, curves_path, resamples, resample_fraction,
                                          out_path);
        if (spear->parsed()) return cmd_analyze_spearman(cfg, table_path, out_path);
        if (disting->parsed()) return cmd_analyze_distinguish(cfg, a_path, b_path, out_path);
        if (sweep->parsed())
            return cmd_analyze_sweep(cfg, data_path, scenario, degrees_spec, csv_path, out_path);
        throw dc::ConfigError("no subcommand");
    } catch (const dc::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const dc::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const dc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
