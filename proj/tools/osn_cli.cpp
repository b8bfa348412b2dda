// Command-line front end for the profile matching pipeline:
// synth -> train -> match -> eval, plus graphsplit, sweep, baseline.

#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "osn/commands.hpp"
#include "osn/datamodel.hpp"

namespace {

using nlohmann::json;

// --config JSON provides defaults; explicit flags win.
json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw osn::DataError("cannot open config file: " + path);
    json j;
    in >> j;
    return j;
}

template <typename T>
void from_config(const CLI::App& app, const json& cfg, const std::string& flag,
                 const std::string& key, T& value) {
    if (app.count(flag) == 0 && cfg.contains(key)) value = cfg[key].get<T>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Profile matching privacy-risk toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override)");

    // synth
    osn::SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "generate synthetic datasets");
    synth_cmd->add_option("--out", synth.out_dir, "output directory")->required();
    synth_cmd->add_option("--noise", synth.noise, "low|medium|high or NoiseConfig JSON path");
    synth_cmd->add_option("--seed", synth.seed, "generation seed");
    synth_cmd->add_option("--train-coupled", synth.train_coupled, "training persons");
    synth_cmd->add_option("--eval-coupled", synth.eval_coupled, "evaluation coupled persons");
    synth_cmd->add_option("--eval-extra", synth.eval_extra, "one-view extras per side");
    synth_cmd->add_option("--topics", synth.true_topics, "true topic count");
    synth_cmd->add_option("--corpus-posts", synth.lda_corpus_posts, "topic corpus size");
    synth_cmd->add_option("--embedding-dim", synth.embedding_dim, "photo embedding dimension");

    // train
    osn::TrainOptions train;
    auto* train_cmd = app.add_subcommand("train", "learn attribute weights");
    train_cmd->add_option("--data", train.data_dir, "synth output directory")->required();
    train_cmd->add_option("--out", train.out_dir, "model output directory")->required();
    train_cmd->add_option("--model", train.model, "logistic|svm");
    train_cmd->add_option("--attributes", train.attributes, "all|weak|strong|graph");
    train_cmd->add_option("--seed", train.seed, "training seed");
    train_cmd->add_option("--lda-topics", train.lda_topics, "LDA topic count");
    train_cmd->add_option("--lda-iterations", train.lda_iterations, "Gibbs sweeps");
    train_cmd->add_option("--jobs", train.jobs, "worker threads");
    train_cmd->add_option("--aux-edges", train.aux_edges, "auxiliary edge list");
    train_cmd->add_option("--tgt-edges", train.tgt_edges, "target edge list");

    // match
    osn::MatchOptions match;
    auto* match_cmd = app.add_subcommand("match", "assign evaluation profiles one-to-one");
    match_cmd->add_option("--data", match.data_dir, "synth output directory")->required();
    match_cmd->add_option("--models", match.model_dir, "train output directory")->required();
    match_cmd->add_option("--out", match.out_dir, "output directory")->required();
    match_cmd->add_option("--jobs", match.jobs, "worker threads");
    match_cmd->add_option("--aux-edges", match.aux_edges, "auxiliary edge list");
    match_cmd->add_option("--tgt-edges", match.tgt_edges, "target edge list");

    // eval
    osn::EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "score an assignment");
    eval_cmd->add_option("--data", eval.data_dir, "synth output directory")->required();
    eval_cmd->add_option("--assignment", eval.assignment, "assignment.csv path")->required();
    eval_cmd->add_option("--out", eval.out_dir, "output directory")->required();
    eval_cmd->add_option("--threshold", eval.threshold,
                         "similarity threshold (default: PR intersection)");

    // graphsplit
    osn::GraphSplitOptions gsplit;
    auto* gsplit_cmd = app.add_subcommand("graphsplit", "sample a graph into two views");
    gsplit_cmd->add_option("--out", gsplit.out_dir, "output directory")->required();
    gsplit_cmd->add_option("--edges", gsplit.edges, "input edge list (default: synthesize)");
    gsplit_cmd->add_option("--nodes", gsplit.synth_nodes, "synthetic graph size");
    gsplit_cmd->add_option("--attach-m", gsplit.attach_m, "attachment edges per node");
    gsplit_cmd->add_option("--beta", gsplit.beta, "edge overlap");
    gsplit_cmd->add_option("--seed", gsplit.seed, "sampling seed");
    gsplit_cmd->add_option("--train-nodes", gsplit.train_nodes, "training node count");
    gsplit_cmd->add_option("--eval-nodes", gsplit.eval_nodes, "evaluation node count");

    // sweep
    osn::SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "match+eval across dataset sizes");
    sweep_cmd->add_option("--data", sweep.data_dir, "synth output directory")->required();
    sweep_cmd->add_option("--models", sweep.model_dir, "train output directory")->required();
    sweep_cmd->add_option("--out", sweep.out_dir, "output directory")->required();
    sweep_cmd->add_option("--sizes", sweep.sizes, "dataset sizes");
    sweep_cmd->add_option("--jobs", sweep.jobs, "worker threads");
    sweep_cmd->add_option("--aux-edges", sweep.aux_edges, "auxiliary edge list");
    sweep_cmd->add_option("--tgt-edges", sweep.tgt_edges, "target edge list");

    // baseline
    osn::BaselineOptions baseline;
    auto* baseline_cmd = app.add_subcommand("baseline", "pairwise classifier comparison");
    baseline_cmd->add_option("--data", baseline.data_dir, "synth output directory")->required();
    baseline_cmd->add_option("--out", baseline.out_dir, "output directory")->required();
    baseline_cmd->add_option("--kind", baseline.kind, "knn|cart|forest|svm|all");
    baseline_cmd->add_option("--cutoff", baseline.cutoff, "probability cutoff");
    baseline_cmd->add_option("--seed", baseline.seed, "training seed");
    baseline_cmd->add_option("--jobs", baseline.jobs, "worker threads");
    baseline_cmd->add_option("--aux-edges", baseline.aux_edges, "auxiliary edge list");
    baseline_cmd->add_option("--tgt-edges", baseline.tgt_edges, "target edge list");
    baseline_cmd->add_option("--sizes", baseline.sizes, "coupled-only size sweep");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = load_config(config_path);
        if (synth_cmd->parsed()) {
            from_config(*synth_cmd, cfg, "--out", "out", synth.out_dir);
            from_config(*synth_cmd, cfg, "--noise", "noise", synth.noise);
            from_config(*synth_cmd, cfg, "--seed", "seed", synth.seed);
            from_config(*synth_cmd, cfg, "--train-coupled", "train_coupled", synth.train_coupled);
            from_config(*synth_cmd, cfg, "--eval-coupled", "eval_coupled", synth.eval_coupled);
            from_config(*synth_cmd, cfg, "--eval-extra", "eval_extra", synth.eval_extra);
            from_config(*synth_cmd, cfg, "--topics", "topics", synth.true_topics);
            osn::cmd_synth(synth);
        } else if (train_cmd->parsed()) {
            from_config(*train_cmd, cfg, "--model", "model", train.model);
            from_config(*train_cmd, cfg, "--attributes", "attributes", train.attributes);
            from_config(*train_cmd, cfg, "--seed", "seed", train.seed);
            from_config(*train_cmd, cfg, "--jobs", "jobs", train.jobs);
            osn::cmd_train(train);
        } else if (match_cmd->parsed()) {
            from_config(*match_cmd, cfg, "--jobs", "jobs", match.jobs);
            osn::cmd_match(match);
        } else if (eval_cmd->parsed()) {
            from_config(*eval_cmd, cfg, "--threshold", "threshold", eval.threshold);
            osn::cmd_eval(eval);
        } else if (gsplit_cmd->parsed()) {
            from_config(*gsplit_cmd, cfg, "--beta", "beta", gsplit.beta);
            from_config(*gsplit_cmd, cfg, "--seed", "seed", gsplit.seed);
            osn::cmd_graphsplit(gsplit);
        } else if (sweep_cmd->parsed()) {
            from_config(*sweep_cmd, cfg, "--jobs", "jobs", sweep.jobs);
            osn::cmd_sweep(sweep);
        } else if (baseline_cmd->parsed()) {
            from_config(*baseline_cmd, cfg, "--cutoff", "cutoff", baseline.cutoff);
            from_config(*baseline_cmd, cfg, "--seed", "seed", baseline.seed);
            from_config(*baseline_cmd, cfg, "--jobs", "jobs", baseline.jobs);
            osn::cmd_baseline(baseline);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
