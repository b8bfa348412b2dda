#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "osn/commands.hpp"
#include "osn/datamodel.hpp"

using namespace osn;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path root;
    TempDir() {
        root = fs::temp_directory_path() /
               ("osn_cmd_" + std::to_string(
                                 std::chrono::steady_clock::now().time_since_epoch().count()));
        fs::create_directories(root);
    }
    ~TempDir() { fs::remove_all(root); }
    std::string sub(const std::string& name) const { return (root / name).string(); }
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

SynthOptions small_synth(const std::string& out) {
    SynthOptions opt;
    opt.out_dir = out;
    opt.noise = "low";
    opt.seed = 5;
    opt.train_coupled = 50;
    opt.eval_coupled = 30;
    opt.eval_extra = 10;
    opt.lda_corpus_posts = 300;
    opt.embedding_dim = 16;
    return opt;
}

}  // namespace

TEST_CASE("synth -> train -> match -> eval produces a full run") {
    TempDir tmp;
    cmd_synth(small_synth(tmp.sub("data")));
    for (const auto* f :
         {"train_aux.jsonl", "train_tgt.jsonl", "train_gt.csv", "eval_aux.jsonl",
          "eval_tgt.jsonl", "eval_gt.csv", "gazetteer.csv", "names.csv", "orgs.txt",
          "stopwords.txt", "lda_corpus.txt", "sentiment_train.tsv", "noise_aux.json",
          "noise_tgt.json", "synth_config.json"}) {
        CHECK(fs::exists(fs::path(tmp.sub("data")) / f));
    }

    TrainOptions train;
    train.data_dir = tmp.sub("data");
    train.out_dir = tmp.sub("model");
    train.lda_iterations = 80;
    train.jobs = 2;
    cmd_train(train);
    CHECK(fs::exists(fs::path(tmp.sub("model")) / "model.json"));
    CHECK(fs::exists(fs::path(tmp.sub("model")) / "lda_model.json"));
    CHECK(fs::exists(fs::path(tmp.sub("model")) / "sentiment_model.json"));

    MatchOptions match;
    match.data_dir = tmp.sub("data");
    match.model_dir = tmp.sub("model");
    match.out_dir = tmp.sub("run");
    match.jobs = 2;
    cmd_match(match);
    CHECK(fs::exists(fs::path(tmp.sub("run")) / "assignment.csv"));

    EvalOptions eval;
    eval.data_dir = tmp.sub("data");
    eval.assignment = (fs::path(tmp.sub("run")) / "assignment.csv").string();
    eval.out_dir = tmp.sub("run");
    cmd_eval(eval);

    const auto metrics = read_json((fs::path(tmp.sub("run")) / "metrics.json").string());
    CHECK(metrics["metrics"]["accuracy"].get<double>() >= 0.9);  // low noise, small set
    CHECK(metrics.contains("intersection_threshold"));
    CHECK(fs::exists(fs::path(tmp.sub("run")) / "pr_curve.csv"));

    SUBCASE("weak-only training zeroes strong weights") {
        TrainOptions weak = train;
        weak.attributes = "weak";
        weak.out_dir = tmp.sub("weak_model");
        cmd_train(weak);
        const auto cfg = read_json((fs::path(tmp.sub("weak_model")) / "train_config.json").string());
        CHECK(cfg["weights"]["username"].get<double>() == 0.0);
        CHECK(cfg["weights"]["location"].get<double>() == 0.0);
        CHECK(cfg["weights"]["gender"].get<double>() == 0.0);
        CHECK(cfg["weights"]["photo"].get<double>() == 0.0);
        CHECK(cfg["weights"]["graph"].get<double>() == 0.0);
        bool any_weak = false;
        for (const auto* w : {"activity", "freetext", "interest", "sentiment"}) {
            if (cfg["weights"][w].get<double>() != 0.0) any_weak = true;
        }
        CHECK(any_weak);
    }
}

TEST_CASE("match before train fails naming the missing model") {
    TempDir tmp;
    cmd_synth(small_synth(tmp.sub("data")));
    MatchOptions match;
    match.data_dir = tmp.sub("data");
    match.model_dir = tmp.sub("missing_model");
    match.out_dir = tmp.sub("run");
    try {
        cmd_match(match);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("model.json") != std::string::npos);
    }
}

TEST_CASE("graphsplit emits edge lists and node datasets") {
    TempDir tmp;
    GraphSplitOptions opt;
    opt.out_dir = tmp.sub("graph");
    opt.synth_nodes = 400;
    opt.attach_m = 3;
    opt.beta = 0.9;
    opt.seed = 13;
    opt.train_nodes = 60;
    opt.eval_nodes = 80;
    cmd_graphsplit(opt);

    for (const auto* f : {"aux_edges.txt", "tgt_edges.txt", "train_aux.jsonl", "train_gt.csv",
                          "eval_aux.jsonl", "eval_gt.csv"}) {
        CHECK(fs::exists(fs::path(tmp.sub("graph")) / f));
    }

    // graph-only training over the emitted artifacts
    TrainOptions train;
    train.data_dir = tmp.sub("graph");
    train.out_dir = tmp.sub("gmodel");
    train.attributes = "graph";
    train.aux_edges = (fs::path(tmp.sub("graph")) / "aux_edges.txt").string();
    train.tgt_edges = (fs::path(tmp.sub("graph")) / "tgt_edges.txt").string();
    cmd_train(train);

    MatchOptions match;
    match.data_dir = tmp.sub("graph");
    match.model_dir = tmp.sub("gmodel");
    match.out_dir = tmp.sub("grun");
    match.aux_edges = train.aux_edges;
    match.tgt_edges = train.tgt_edges;
    cmd_match(match);

    EvalOptions eval;
    eval.data_dir = tmp.sub("graph");
    eval.assignment = (fs::path(tmp.sub("grun")) / "assignment.csv").string();
    eval.out_dir = tmp.sub("grun");
    cmd_eval(eval);
    const auto metrics = read_json((fs::path(tmp.sub("grun")) / "metrics.json").string());
    // beta=0.9 on a 400-node graph: low-degree nodes collide, so the bound is
    // loose, but matching must beat 1/80 random chance by an order of magnitude
    CHECK(metrics["metrics"]["accuracy"].get<double>() >= 0.15);
}

TEST_CASE("sweep writes one row per size") {
    TempDir tmp;
    auto synth = small_synth(tmp.sub("data"));
    synth.eval_coupled = 40;
    synth.eval_extra = 0;
    cmd_synth(synth);

    TrainOptions train;
    train.data_dir = tmp.sub("data");
    train.out_dir = tmp.sub("model");
    train.lda_iterations = 60;
    cmd_train(train);

    SweepOptions sweep;
    sweep.data_dir = tmp.sub("data");
    sweep.model_dir = tmp.sub("model");
    sweep.out_dir = tmp.sub("sweep");
    sweep.sizes = {10, 20, 40};
    cmd_sweep(sweep);

    std::ifstream in((fs::path(tmp.sub("sweep")) / "sweep.csv").string());
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 4);  // header + 3 sizes

    SweepOptions too_big = sweep;
    too_big.sizes = {999};
    CHECK_THROWS_AS(cmd_sweep(too_big), DataError);
}

TEST_CASE("baseline command evaluates all four classifiers") {
    TempDir tmp;
    auto synth = small_synth(tmp.sub("data"));
    synth.train_coupled = 40;
    synth.eval_coupled = 20;
    synth.eval_extra = 5;
    cmd_synth(synth);

    BaselineOptions opt;
    opt.data_dir = tmp.sub("data");
    opt.out_dir = tmp.sub("base");
    opt.kind = "all";
    opt.jobs = 2;
    cmd_baseline(opt);

    const auto j = read_json((fs::path(tmp.sub("base")) / "baseline_metrics.json").string());
    REQUIRE(j["results"].size() == 4);
    for (const auto& entry : j["results"]) {
        const auto method = entry["method"].get<std::string>();
        CHECK(method.rfind("baseline-", 0) == 0);
        CHECK(entry["metrics"]["precision"].get<double>() >= 0.0);
    }
}

TEST_CASE("commands rerun byte-identically modulo the timestamp") {
    TempDir tmp;
    cmd_synth(small_synth(tmp.sub("d1")));
    cmd_synth(small_synth(tmp.sub("d2")));

    auto strip_timestamp = [](const std::string& path) {
        std::ifstream in(path);
        std::stringstream out;
        std::string line;
        while (std::getline(in, line)) {
            if (line.find("generated_at") != std::string::npos) continue;
            out << line << '\n';
        }
        return out.str();
    };

    for (const auto* f : {"train_aux.jsonl", "eval_tgt.jsonl", "train_gt.csv",
                          "sentiment_train.tsv", "noise_aux.json", "synth_config.json"}) {
        const auto a = strip_timestamp((fs::path(tmp.sub("d1")) / f).string());
        const auto b = strip_timestamp((fs::path(tmp.sub("d2")) / f).string());
        CHECK(a == b);
        CHECK(!a.empty());
    }
}
