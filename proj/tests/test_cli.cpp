#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "divcurve/dataset_io.hpp"

// End-to-end checks against the built binary.

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = DIVCURVE_CLI_PATH;

struct Sandbox {
    fs::path dir;
    Sandbox() {
        dir = fs::temp_directory_path() / ("divcurve_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Sandbox() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::string& args) {
    int status = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("cli generate/curve pipeline is seed-reproducible") {
    Sandbox box;
    write(box.path("man.json"),
          R"({"model": "ER", "n_range": [6, 8], "per_size": 2, "params": {"p": 0.5}})");

    REQUIRE(run("generate --manifest " + box.path("man.json") + " --out " + box.path("a.jsonl") +
                " --seed 42") == 0);
    REQUIRE(run("generate --manifest " + box.path("man.json") + " --out " + box.path("b.jsonl") +
                " --seed 42") == 0);
    CHECK(slurp(box.path("a.jsonl")) == slurp(box.path("b.jsonl")));
    CHECK(fs::exists(box.path("a.jsonl") + ".manifest.json"));

    REQUIRE(run("curve --data " + box.path("a.jsonl") + " --csv " + box.path("c1.csv") +
                " --jsonl " + box.path("c1.jsonl") + " --seed 7 --threads 1") == 0);
    REQUIRE(run("curve --data " + box.path("a.jsonl") + " --csv " + box.path("c2.csv") +
                " --jsonl " + box.path("c2.jsonl") + " --seed 7 --threads 3") == 0);
    CHECK(slurp(box.path("c1.csv")) == slurp(box.path("c2.csv")));  // thread independence
    CHECK(slurp(box.path("c1.csv")).substr(0, 16) == "# config_digest=");

    // Every emitted JSONL row carries the digest.
    std::istringstream rows(slurp(box.path("c1.jsonl")));
    std::string line;
    while (std::getline(rows, line)) {
        if (line.empty()) continue;
        CHECK(json::parse(line).contains("config_digest"));
    }
}

TEST_CASE("cli curve on a singleton K1 dataset") {
    Sandbox box;
    write(box.path("k1.jsonl"), R"({"n": 1, "edges": []})"
                                "\n");
    REQUIRE(run("curve --data " + box.path("k1.jsonl") + " --scales 1:1 --csv " +
                box.path("out.csv")) == 0);
    std::string csv = slurp(box.path("out.csv"));
    CHECK(csv.find("0,1,1\n") != std::string::npos);
}

TEST_CASE("cli curve on the house fixture at its full size") {
    Sandbox box;
    write(box.path("house.jsonl"),
          R"({"n": 5, "edges": [[0,1],[1,2],[2,3],[0,3],[0,4],[1,4]]})"
          "\n");
    REQUIRE(run("curve --data " + box.path("house.jsonl") + " --scales 5:5 --csv " +
                box.path("out.csv")) == 0);
    CHECK(slurp(box.path("out.csv")).find("0,5,2.388459813") != std::string::npos);
}

TEST_CASE("cli distinguish reproduces the fixture verdicts") {
    Sandbox box;
    write(box.path("gc.txt"), "6 8\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n1 5\n2 4\n");
    write(box.path("gd.txt"), "6 8\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n1 4\n2 5\n");
    REQUIRE(run("analyze distinguish --a " + box.path("gc.txt") + " --b " + box.path("gd.txt") +
                " --out " + box.path("rep.json")) == 0);
    json rep = json::parse(slurp(box.path("rep.json")));
    CHECK(rep["spread_only"] == false);
    CHECK(rep["one_edge_curve"] == true);
    CHECK(rep.contains("config_digest"));
}

TEST_CASE("cli exit codes") {
    Sandbox box;
    CHECK(run("curve --data /nonexistent.jsonl") == 4);
    write(box.path("bad.json"), R"({"model": "ER", "n_range": [6, 8], "params": {"p": 1.5}})");
    CHECK(run("generate --manifest " + box.path("bad.json") + " --out " + box.path("x.jsonl")) ==
          2);
    CHECK(run("definitely-not-a-command") == 2);
}

TEST_CASE("cli permtest and sweep emit digests") {
    Sandbox box;
    write(box.path("man.json"),
          R"([{"model": "ER", "n_range": [8, 10], "per_size": 2, "params": {"p": 0.7}},
              {"model": "RG", "n_range": [8, 10], "per_size": 2, "params": {"r": 0.3}}])");
    REQUIRE(run("generate --manifest " + box.path("man.json") + " --out " + box.path("d.jsonl") +
                " --seed 5") == 0);

    // Split by label into two curve files.
    REQUIRE(run("curve --data " + box.path("d.jsonl") + " --jsonl " + box.path("curves.jsonl") +
                " --seed 5") == 0);
    std::istringstream rows(slurp(box.path("curves.jsonl")));
    std::ofstream a(box.path("a.jsonl")), b(box.path("b.jsonl"));
    std::string line;
    while (std::getline(rows, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        (j["label"] == 0 ? a : b) << line << "\n";
    }
    a.close();
    b.close();

    REQUIRE(run("analyze permtest --curves-a " + box.path("a.jsonl") + " --curves-b " +
                box.path("b.jsonl") + " --perms 99 --seed 1 --out " + box.path("pt.json")) == 0);
    json pt = json::parse(slurp(box.path("pt.json")));
    CHECK(pt["permutations"] == 99);
    CHECK(pt["p_value"] > 0.0);
    CHECK(pt["p_value"] <= 1.0);
    CHECK(pt.contains("config_digest"));

    REQUIRE(run("analyze sweep --data " + box.path("d.jsonl") +
                " --scenario remove_edge --degrees 0.25:1.0:0.25 --csv " + box.path("sweep.csv") +
                " --out " + box.path("sweep.json") + " --seed 2") == 0);
    CHECK(slurp(box.path("sweep.csv")).find("scenario,degree,mean_norm") != std::string::npos);
    CHECK(json::parse(slurp(box.path("sweep.json"))).contains("rho"));
}

TEST_CASE("cli knn and silhouette on generated curves") {
    Sandbox box;
    write(box.path("man.json"),
          R"([{"model": "ER", "n_range": [10, 14], "per_size": 3, "params": {"p": 0.8}},
              {"model": "ER", "n_range": [10, 14], "per_size": 3, "params": {"p": 0.15}}])");
    REQUIRE(run("generate --manifest " + box.path("man.json") + " --out " + box.path("d.jsonl") +
                " --seed 11") == 0);
    REQUIRE(run("curve --data " + box.path("d.jsonl") + " --jsonl " + box.path("c.jsonl") +
                " --seed 11") == 0);
    REQUIRE(run("analyze knn --curves " + box.path("c.jsonl") +
                " --k 3 --folds 5 --group-by-size --seed 3 --out " + box.path("knn.json")) == 0);
    json knn = json::parse(slurp(box.path("knn.json")));
    CHECK(knn["mean_accuracy"].get<double>() > 0.8);  // dense vs sparse ER is easy

    REQUIRE(run("analyze silhouette --curves " + box.path("c.jsonl") + " --out " +
                box.path("sil.json")) == 0);
    CHECK(json::parse(slurp(box.path("sil.json")))["silhouette"].get<double>() > 0.0);

    REQUIRE(run("analyze dist --curves " + box.path("c.jsonl") + " --out " + box.path("dm.csv")) ==
            0);
    CHECK(slurp(box.path("dm.csv")).substr(0, 16) == "# config_digest=");
}

TEST_CASE("cli convert handles TU and edge-list inputs") {
    Sandbox box;
    write(box.path("DS_A.txt"), "1, 2\n2, 1\n3, 4\n4, 3\n");
    write(box.path("DS_graph_indicator.txt"), "1\n1\n2\n2\n");
    write(box.path("DS_graph_labels.txt"), "0\n1\n");
    REQUIRE(run("convert --tu-prefix " + box.path("DS") + " --out " + box.path("tu.jsonl")) == 0);
    auto ds = divcurve::load_jsonl_dataset(box.path("tu.jsonl"));
    REQUIRE(ds.graphs.size() == 2);
    CHECK(ds.graphs[1].label == 1);

    write(box.path("g.txt"), "3 2\n0 1\n1 2\n");
    REQUIRE(run("convert --edge-list " + box.path("g.txt") + " --out " + box.path("el.jsonl")) ==
            0);
    CHECK(divcurve::load_jsonl_dataset(box.path("el.jsonl")).graphs[0].edge_count() == 2);
}

TEST_CASE("cli spread-function baseline") {
    Sandbox box;
    write(box.path("d.jsonl"), R"({"n": 2, "edges": [[0,1]]})"
                               "\n");
    REQUIRE(run("curve --data " + box.path("d.jsonl") + " --spread-function --csv " +
                box.path("sf.csv")) == 0);
    std::string csv = slurp(box.path("sf.csv"));
    CHECK(csv.find("graph_id,t,value") != std::string::npos);
    // t = 1 row equals spread(K2) = 2/(1+exp(-1)).
    CHECK(csv.find("0,1,1.46211715726000") != std::string::npos);
}

TEST_CASE("cli hodge curves over triangulations") {
    Sandbox box;
    write(box.path("t.jsonl"), R"({"n": 3, "triangles": [[0,1,2]], "label": 0})"
                               "\n");
    REQUIRE(run("hodge --triangulations " + box.path("t.jsonl") +
                " --k 2 --hodge-time 1 --scales 3:5 --repeats 1 --csv " + box.path("h.csv") +
                " --jsonl " + box.path("h.jsonl")) == 0);
    std::string csv = slurp(box.path("h.csv"));
    CHECK(csv.find("complex_id,scale,value") != std::string::npos);
    // At scale 3 the table is the 1x1 entry exp(-3): spread = exp(exp(-3)).
    json row = json::parse(slurp(box.path("h.jsonl")));
    CHECK(row["scales"][0] == 3);
    const double expected = 1.0 / std::exp(-std::exp(-3.0));
    CHECK(row["values"][0].get<double>() == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("cli debug dumps distance matrices and coarsened graphs") {
    Sandbox box;
    write(box.path("d.jsonl"), R"({"n": 4, "edges": [[0,1],[1,2],[2,3],[0,3]]})"
                               "\n");
    REQUIRE(run("curve --data " + box.path("d.jsonl") + " --csv " + box.path("c.csv") +
                " --debug-dump-dir " + box.path("dbg")) == 0);
    CHECK(fs::exists(box.path("dbg") + "/dist_0.csv"));
    CHECK(fs::exists(box.path("dbg") + "/coarse_0.jsonl"));
}
