#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osn/datamodel.hpp"

namespace osn {

// Pipeline stages behind the CLI subcommands. Each writes its outputs under
// out_dir and throws DataError with a diagnostic (naming the offending path)
// on missing inputs or stage-order violations.

struct SynthOptions {
    std::string out_dir;
    std::string noise = "medium";  // preset name or path to a NoiseConfig JSON
    std::uint64_t seed = 42;
    std::size_t train_coupled = 400;
    std::size_t eval_coupled = 500;
    std::size_t eval_extra = 500;
    int true_topics = 6;
    std::size_t lda_corpus_posts = 2000;
    std::size_t embedding_dim = 128;
};

void cmd_synth(const SynthOptions& opt);

struct TrainOptions {
    std::string data_dir;
    std::string out_dir;
    std::string model = "logistic";  // logistic | svm
    std::string attributes = "all";  // all | weak | strong | graph
    std::uint64_t seed = 0;
    int lda_topics = 6;
    int lda_iterations = 300;
    int jobs = 1;
    std::string aux_edges;  // optional edge lists enabling the graph attribute
    std::string tgt_edges;
};

void cmd_train(const TrainOptions& opt);

struct MatchOptions {
    std::string data_dir;
    std::string model_dir;
    std::string out_dir;
    int jobs = 1;
    std::string aux_edges;
    std::string tgt_edges;
};

void cmd_match(const MatchOptions& opt);

struct EvalOptions {
    std::string data_dir;
    std::string assignment;  // path to assignment.csv
    std::string out_dir;
    double threshold = -1.0;  // < 0: report at the PR intersection threshold
};

void cmd_eval(const EvalOptions& opt);

struct GraphSplitOptions {
    std::string out_dir;
    std::string edges;  // input edge list; empty synthesizes a graph
    std::size_t synth_nodes = 5000;
    std::size_t attach_m = 5;
    double beta = 0.9;
    std::uint64_t seed = 7;
    std::size_t train_nodes = 300;
    std::size_t eval_nodes = 500;
};

void cmd_graphsplit(const GraphSplitOptions& opt);

struct SweepOptions {
    std::string data_dir;
    std::string model_dir;
    std::string out_dir;
    std::vector<std::size_t> sizes = {100, 200, 500, 1000};
    int jobs = 1;
    std::string aux_edges;
    std::string tgt_edges;
};

void cmd_sweep(const SweepOptions& opt);

struct BaselineOptions {
    std::string data_dir;
    std::string out_dir;
    std::string kind = "all";  // knn | cart | forest | svm | all
    double cutoff = 0.5;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string aux_edges;
    std::string tgt_edges;
    std::vector<std::size_t> sizes;  // optional coupled-only size sweep
};

void cmd_baseline(const BaselineOptions& opt);

// ISO-8601 UTC timestamp; the single field allowed to differ between reruns.
std::string iso_timestamp();

}  // namespace osn
