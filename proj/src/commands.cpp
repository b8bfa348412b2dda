#include "osn/commands.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "osn/attacks.hpp"
#include "osn/baselines.hpp"
#include "osn/graph.hpp"
#include "osn/pipeline.hpp"
#include "osn/rng.hpp"
#include "osn/synthgen.hpp"
#include "osn/text.hpp"

namespace osn {

namespace fs = std::filesystem;
using nlohmann::json;

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

void ensure_dir(const std::string& dir) {
    if (dir.empty()) throw DataError("output directory not set");
    fs::create_directories(dir);
}

void require_file(const std::string& path) {
    if (!fs::exists(path)) throw DataError("missing input file: " + path);
}

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << j.dump(2) << '\n';
}

void write_stopwords(const std::string& path) {
    std::vector<std::string> words(default_stopwords().begin(), default_stopwords().end());
    std::sort(words.begin(), words.end());
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    for (const auto& w : words) out << w << '\n';
}

// Shared loading for train/match/baseline: datasets plus lookup tables.
struct LoadedData {
    Dataset train_aux, train_tgt, eval_aux, eval_tgt;
    GroundTruth train_gt, eval_gt;
    Resources res;
};

void load_tables(const std::string& data_dir, Resources& res) {
    require_file(join(data_dir, "gazetteer.csv"));
    require_file(join(data_dir, "names.csv"));
    require_file(join(data_dir, "orgs.txt"));
    res.gazetteer = load_gazetteer(join(data_dir, "gazetteer.csv"));
    res.gender_table = load_name_gender_table({join(data_dir, "names.csv")});
    res.organizations = load_org_list(join(data_dir, "orgs.txt"));
}

void load_graph_features(const std::string& aux_edges, const std::string& tgt_edges,
                         Resources& res) {
    if (aux_edges.empty() && tgt_edges.empty()) return;
    if (aux_edges.empty() || tgt_edges.empty()) {
        throw DataError("both --aux-edges and --tgt-edges are required for graph features");
    }
    require_file(aux_edges);
    require_file(tgt_edges);
    const auto ga = load_edge_list(aux_edges);
    const auto gt = load_edge_list(tgt_edges);
    for (const auto& [node, _] : ga.adjacency) {
        res.graph_features_aux.emplace(node, degree_feature_vector(ga, node));
    }
    for (const auto& [node, _] : gt.adjacency) {
        res.graph_features_tgt.emplace(node, degree_feature_vector(gt, node));
    }
}

LoadedData load_training_data(const std::string& data_dir) {
    LoadedData d;
    for (const auto* f : {"train_aux.jsonl", "train_tgt.jsonl", "train_gt.csv"}) {
        require_file(join(data_dir, f));
    }
    d.train_aux = load_profiles(join(data_dir, "train_aux.jsonl"), NetworkLabel::auxiliary,
                                DatasetRole::training);
    d.train_tgt = load_profiles(join(data_dir, "train_tgt.jsonl"), NetworkLabel::target,
                                DatasetRole::training);
    d.train_gt = load_ground_truth(join(data_dir, "train_gt.csv"), d.train_aux, d.train_tgt);
    load_tables(data_dir, d.res);
    return d;
}

LoadedData load_eval_data(const std::string& data_dir) {
    LoadedData d;
    for (const auto* f : {"eval_aux.jsonl", "eval_tgt.jsonl", "eval_gt.csv"}) {
        require_file(join(data_dir, f));
    }
    d.eval_aux = load_profiles(join(data_dir, "eval_aux.jsonl"), NetworkLabel::auxiliary,
                               DatasetRole::evaluation);
    d.eval_tgt = load_profiles(join(data_dir, "eval_tgt.jsonl"), NetworkLabel::target,
                               DatasetRole::evaluation);
    d.eval_gt = load_ground_truth(join(data_dir, "eval_gt.csv"), d.eval_aux, d.eval_tgt);
    load_tables(data_dir, d.res);
    return d;
}

void load_text_models(const std::string& model_dir, Resources& res) {
    const auto lda_path = join(model_dir, "lda_model.json");
    const auto sent_path = join(model_dir, "sentiment_model.json");
    if (fs::exists(lda_path)) res.lda = load_lda_model(lda_path);
    if (fs::exists(sent_path)) res.sentiment = load_sentiment_model(sent_path);
}

json metrics_json(const Metrics& m) {
    return json{{"precision", m.precision},
                {"recall", m.recall},
                {"accuracy", m.accuracy},
                {"precision_degenerate", m.precision_degenerate},
                {"true_positives", m.tp},
                {"false_positives", m.fp},
                {"correct_matches", m.correct},
                {"coupled_total", m.coupled_total}};
}

}  // namespace

void cmd_synth(const SynthOptions& opt) {
    ensure_dir(opt.out_dir);

    ExperimentSpec spec;
    spec.train_coupled = opt.train_coupled;
    spec.eval_coupled = opt.eval_coupled;
    spec.eval_extra = opt.eval_extra;
    spec.true_topics = opt.true_topics;
    spec.lda_corpus_posts = opt.lda_corpus_posts;
    spec.seed = opt.seed;
    spec.person_params.embedding_dim = opt.embedding_dim;

    if (opt.noise == "low" || opt.noise == "medium" || opt.noise == "high") {
        spec.noise_preset_name = opt.noise;
    } else {
        // custom NoiseConfig JSON: same knobs for both views, distinct seeds
        require_file(opt.noise);
        spec.custom_noise = load_noise_config(opt.noise);
    }
    const auto exp = make_experiment(spec);

    save_profiles(exp.train_aux, join(opt.out_dir, "train_aux.jsonl"));
    save_profiles(exp.train_tgt, join(opt.out_dir, "train_tgt.jsonl"));
    save_ground_truth(exp.train_gt, join(opt.out_dir, "train_gt.csv"));
    save_profiles(exp.eval_aux, join(opt.out_dir, "eval_aux.jsonl"));
    save_profiles(exp.eval_tgt, join(opt.out_dir, "eval_tgt.jsonl"));
    save_ground_truth(exp.eval_gt, join(opt.out_dir, "eval_gt.csv"));

    const auto& vocab = builtin_vocab();
    save_gazetteer(vocab.gazetteer(), join(opt.out_dir, "gazetteer.csv"));
    save_name_gender_table(vocab.name_table(), join(opt.out_dir, "names.csv"));
    {
        std::ofstream orgs(join(opt.out_dir, "orgs.txt"));
        for (const auto& o : vocab.organizations) orgs << o << '\n';
    }
    write_stopwords(join(opt.out_dir, "stopwords.txt"));
    {
        std::ofstream corpus(join(opt.out_dir, "lda_corpus.txt"));
        for (const auto& doc : exp.lda_corpus) corpus << doc << '\n';
    }
    {
        std::ofstream sent(join(opt.out_dir, "sentiment_train.tsv"));
        for (const auto& ex : exp.sentiment_corpus) {
            sent << (ex.positive ? "pos" : "neg") << '\t' << ex.text << '\n';
        }
    }
    save_noise_config(exp.noise_aux, join(opt.out_dir, "noise_aux.json"));
    save_noise_config(exp.noise_tgt, join(opt.out_dir, "noise_tgt.json"));

    json echo{{"command", "synth"},
              {"noise", opt.noise},
              {"seed", opt.seed},
              {"train_coupled", opt.train_coupled},
              {"eval_coupled", opt.eval_coupled},
              {"eval_extra", opt.eval_extra},
              {"true_topics", opt.true_topics},
              {"lda_corpus_posts", opt.lda_corpus_posts},
              {"embedding_dim", opt.embedding_dim},
              {"generated_at", iso_timestamp()}};
    write_json(echo, join(opt.out_dir, "synth_config.json"));
}

void cmd_train(const TrainOptions& opt) {
    ensure_dir(opt.out_dir);
    auto d = load_training_data(opt.data_dir);
    load_graph_features(opt.aux_edges, opt.tgt_edges, d.res);

    const auto selector = selector_from_name(opt.attributes);
    if (!selector) throw DataError("unknown attribute selector '" + opt.attributes + "'");
    const auto mask = selector_mask(*selector);

    // text models are part of model generation (pipeline step 3)
    const auto corpus_path = join(opt.data_dir, "lda_corpus.txt");
    const auto sentiment_path = join(opt.data_dir, "sentiment_train.tsv");
    const bool want_text = mask[static_cast<int>(Attribute::interest)] ||
                           mask[static_cast<int>(Attribute::sentiment)];
    if (want_text && fs::exists(corpus_path)) {
        std::ifstream in(corpus_path);
        std::vector<std::string> corpus;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) corpus.push_back(line);
        }
        if (!corpus.empty()) {
            LdaParams lp;
            lp.num_topics = opt.lda_topics;
            lp.alpha = 0.1;  // sparse per-post mixtures
            lp.iterations = opt.lda_iterations;
            lp.seed = opt.seed + 101;
            d.res.lda = train_lda(corpus, lp);
            save_lda_model(*d.res.lda, join(opt.out_dir, "lda_model.json"));
        }
    }
    if (want_text && fs::exists(sentiment_path)) {
        const auto corpus = load_sentiment_corpus(sentiment_path);
        if (!corpus.empty()) {
            d.res.sentiment = train_sentiment(corpus);
            save_sentiment_model(*d.res.sentiment, join(opt.out_dir, "sentiment_model.json"));
        }
    }

    const auto ts = build_training_set(d.train_gt, d.train_aux, d.train_tgt, d.res, opt.jobs);
    const auto imp = fit_imputation(ts);

    MatchModel model;
    if (opt.model == "logistic") {
        LogregParams params;
        params.seed = opt.seed;
        params.active = mask;
        model = train_logreg(ts, imp, params);
    } else if (opt.model == "svm") {
        SvmParams params;
        params.seed = opt.seed;
        params.active = mask;
        model = train_linear_svm(ts, imp, params);
    } else {
        throw DataError("unknown model kind '" + opt.model + "'");
    }
    save_match_model(model, join(opt.out_dir, "model.json"));

    json weights = json::object();
    for (std::size_t i = 0; i < model.attribute_order.size(); ++i) {
        weights[attribute_name(model.attribute_order[i])] = model.weights[i];
    }
    json echo{{"command", "train"},
              {"data_dir", opt.data_dir},
              {"model", opt.model},
              {"attributes", opt.attributes},
              {"seed", opt.seed},
              {"lda_topics", opt.lda_topics},
              {"lda_iterations", opt.lda_iterations},
              {"training_rows", ts.rows.size()},
              {"weights", weights},
              {"bias", model.bias},
              {"generated_at", iso_timestamp()}};
    write_json(echo, join(opt.out_dir, "train_config.json"));
}

void cmd_match(const MatchOptions& opt) {
    ensure_dir(opt.out_dir);
    const auto model_path = join(opt.model_dir, "model.json");
    require_file(model_path);  // stage order: train must run before match
    const auto model = load_match_model(model_path);

    auto d = load_eval_data(opt.data_dir);
    load_text_models(opt.model_dir, d.res);
    load_graph_features(opt.aux_edges, opt.tgt_edges, d.res);

    std::vector<std::string> aux_ids, tgt_ids;
    for (const auto& p : d.eval_aux.profiles) aux_ids.push_back(p.id);
    for (const auto& p : d.eval_tgt.profiles) tgt_ids.push_back(p.id);
    const auto z =
        build_similarity_matrix(d.eval_aux, aux_ids, d.eval_tgt, tgt_ids, model, d.res, opt.jobs);
    const auto assignment = match_profiles(z);
    save_assignment(assignment, join(opt.out_dir, "assignment.csv"));

    json echo{{"command", "match"},
              {"data_dir", opt.data_dir},
              {"model_dir", opt.model_dir},
              {"aux_profiles", aux_ids.size()},
              {"target_profiles", tgt_ids.size()},
              {"matches", assignment.matches.size()},
              {"total_score", assignment.total_score},
              {"generated_at", iso_timestamp()}};
    write_json(echo, join(opt.out_dir, "match_config.json"));
}

void cmd_eval(const EvalOptions& opt) {
    ensure_dir(opt.out_dir);
    require_file(opt.assignment);
    auto d = load_eval_data(opt.data_dir);
    const auto assignment = load_assignment(opt.assignment);

    const auto curve = pr_sweep(assignment, d.eval_gt);
    const double threshold = opt.threshold >= 0.0 ? opt.threshold : curve.intersection_threshold;
    const auto m = evaluate(assignment, d.eval_gt, threshold);

    save_pr_curve(curve, join(opt.out_dir, "pr_curve.csv"));
    json j{{"command", "eval"},
           {"data_dir", opt.data_dir},
           {"assignment", opt.assignment},
           {"threshold", threshold},
           {"threshold_requested", opt.threshold},
           {"intersection_threshold", curve.intersection_threshold},
           {"metrics", metrics_json(m)},
           {"generated_at", iso_timestamp()}};
    write_json(j, join(opt.out_dir, "metrics.json"));
}

void cmd_graphsplit(const GraphSplitOptions& opt) {
    ensure_dir(opt.out_dir);

    SocialGraph g;
    if (opt.edges.empty()) {
        g = generate_synthetic_graph(opt.synth_nodes, opt.attach_m, opt.seed);
    } else {
        require_file(opt.edges);
        g = load_edge_list(opt.edges);
    }
    auto [aux, tgt] = split_graph(g, opt.beta, opt.seed + 1);
    save_edge_list(aux, join(opt.out_dir, "aux_edges.txt"));
    save_edge_list(tgt, join(opt.out_dir, "tgt_edges.txt"));

    // node partitions for training and evaluation, id-only profiles
    std::vector<std::string> nodes;
    nodes.reserve(g.adjacency.size());
    for (const auto& [id, _] : g.adjacency) nodes.push_back(id);
    std::sort(nodes.begin(), nodes.end());
    Rng rng(opt.seed + 2);
    rng.shuffle(nodes);
    if (nodes.size() < opt.train_nodes + opt.eval_nodes) {
        throw DataError("graphsplit: graph too small for requested train/eval node counts");
    }

    auto emit = [&](std::size_t begin, std::size_t count, const std::string& aux_path,
                    const std::string& tgt_path, const std::string& gt_path,
                    DatasetRole role) {
        Dataset da, dt;
        da.network_label = NetworkLabel::auxiliary;
        dt.network_label = NetworkLabel::target;
        da.role = dt.role = role;
        GroundTruth gt;
        for (std::size_t i = begin; i < begin + count; ++i) {
            Profile pa, pt;
            pa.id = nodes[i];
            pt.id = nodes[i];
            da.index.emplace(pa.id, da.profiles.size());
            da.profiles.push_back(pa);
            dt.index.emplace(pt.id, dt.profiles.size());
            dt.profiles.push_back(pt);
            gt.coupled.emplace_back(nodes[i], nodes[i]);
        }
        // balanced uncoupled sample for training
        Rng pair_rng(opt.seed + 3);
        std::size_t made = 0;
        while (made < count) {
            const auto i = pair_rng.below(count);
            const auto j = pair_rng.below(count);
            if (i == j) continue;
            gt.uncoupled.emplace_back(nodes[begin + i], nodes[begin + j]);
            ++made;
        }
        save_profiles(da, aux_path);
        save_profiles(dt, tgt_path);
        save_ground_truth(gt, gt_path);
    };
    emit(0, opt.train_nodes, join(opt.out_dir, "train_aux.jsonl"),
         join(opt.out_dir, "train_tgt.jsonl"), join(opt.out_dir, "train_gt.csv"),
         DatasetRole::training);
    emit(opt.train_nodes, opt.eval_nodes, join(opt.out_dir, "eval_aux.jsonl"),
         join(opt.out_dir, "eval_tgt.jsonl"), join(opt.out_dir, "eval_gt.csv"),
         DatasetRole::evaluation);

    // empty lookup tables so train/match can load the directory uniformly
    save_gazetteer(Gazetteer{}, join(opt.out_dir, "gazetteer.csv"));
    save_name_gender_table(NameGenderTable{}, join(opt.out_dir, "names.csv"));
    {
        std::ofstream orgs(join(opt.out_dir, "orgs.txt"));
    }

    json echo{{"command", "graphsplit"},
              {"edges", opt.edges},
              {"synth_nodes", opt.synth_nodes},
              {"attach_m", opt.attach_m},
              {"beta", opt.beta},
              {"seed", opt.seed},
              {"train_nodes", opt.train_nodes},
              {"eval_nodes", opt.eval_nodes},
              {"aux_edges", aux.num_edges()},
              {"tgt_edges", tgt.num_edges()},
              {"generated_at", iso_timestamp()}};
    write_json(echo, join(opt.out_dir, "graphsplit_config.json"));
}

void cmd_sweep(const SweepOptions& opt) {
    ensure_dir(opt.out_dir);
    const auto model_path = join(opt.model_dir, "model.json");
    require_file(model_path);
    const auto model = load_match_model(model_path);

    auto d = load_eval_data(opt.data_dir);
    load_text_models(opt.model_dir, d.res);
    load_graph_features(opt.aux_edges, opt.tgt_edges, d.res);

    std::ofstream out(join(opt.out_dir, "sweep.csv"));
    if (!out) throw DataError("cannot write sweep.csv");
    out << "size,threshold,precision,recall,accuracy\n";
    out.precision(17);
    for (const auto size : opt.sizes) {
        if (d.eval_gt.coupled.size() < size) {
            throw DataError("sweep: only " + std::to_string(d.eval_gt.coupled.size()) +
                            " coupled pairs available, need " + std::to_string(size));
        }
        std::vector<std::string> aux_ids, tgt_ids;
        GroundTruth gt;
        for (std::size_t i = 0; i < size; ++i) {
            const auto& [a, t] = d.eval_gt.coupled[i];
            aux_ids.push_back(a);
            tgt_ids.push_back(t);
            gt.coupled.emplace_back(a, t);
        }
        const auto z = build_similarity_matrix(d.eval_aux, aux_ids, d.eval_tgt, tgt_ids, model,
                                               d.res, opt.jobs);
        const auto assignment = match_profiles(z);
        const auto curve = pr_sweep(assignment, gt);
        const auto m = evaluate(assignment, gt, curve.intersection_threshold);
        out << size << ',' << curve.intersection_threshold << ',' << m.precision << ','
            << m.recall << ',' << m.accuracy << '\n';
    }

    json echo{{"command", "sweep"},
              {"data_dir", opt.data_dir},
              {"model_dir", opt.model_dir},
              {"sizes", opt.sizes},
              {"generated_at", iso_timestamp()}};
    write_json(echo, join(opt.out_dir, "sweep_config.json"));
}

void cmd_baseline(const BaselineOptions& opt) {
    ensure_dir(opt.out_dir);
    auto train = load_training_data(opt.data_dir);
    auto eval = load_eval_data(opt.data_dir);
    load_graph_features(opt.aux_edges, opt.tgt_edges, train.res);
    load_graph_features(opt.aux_edges, opt.tgt_edges, eval.res);

    const bool with_graph = !opt.aux_edges.empty();
    const auto attrs = strong_identifier_attributes(with_graph);
    const auto ts =
        build_training_set(train.train_gt, train.train_aux, train.train_tgt, train.res, opt.jobs);

    std::vector<BaselineKind> kinds;
    if (opt.kind == "all") {
        kinds = {BaselineKind::knn, BaselineKind::cart, BaselineKind::forest, BaselineKind::svm};
    } else {
        const auto k = baseline_from_name(opt.kind);
        if (!k) throw DataError("unknown baseline kind '" + opt.kind + "'");
        kinds = {*k};
    }

    json results = json::array();
    for (const auto kind : kinds) {
        BaselineParams params;
        params.seed = opt.seed;
        const auto model = train_baseline(kind, ts, attrs, params);
        const auto scored = score_all_pairs(model, eval.eval_aux, eval.eval_tgt, eval.res,
                                            opt.jobs);
        const auto predicted = classify_pairs(model, scored, opt.cutoff);
        const auto m = evaluate_baseline(predicted, eval.eval_gt);
        json entry{{"method", std::string("baseline-") + baseline_name(kind)},
                   {"cutoff", opt.cutoff},
                   {"predicted_pairs", predicted.size()},
                   {"metrics", metrics_json(m)}};

        if (!opt.sizes.empty()) {
            json sweep = json::array();
            for (const auto size : opt.sizes) {
                if (eval.eval_gt.coupled.size() < size) {
                    throw DataError("baseline sweep: not enough coupled pairs for size " +
                                    std::to_string(size));
                }
                std::unordered_map<std::string, bool> in_aux, in_tgt;
                GroundTruth gt;
                for (std::size_t i = 0; i < size; ++i) {
                    const auto& [a, t] = eval.eval_gt.coupled[i];
                    in_aux[a] = true;
                    in_tgt[t] = true;
                    gt.coupled.emplace_back(a, t);
                }
                std::vector<ScoredPair> subset;
                for (const auto& p : scored) {
                    if (in_aux.count(p.aux_id) && in_tgt.count(p.target_id)) subset.push_back(p);
                }
                const auto pred = classify_pairs(model, subset, opt.cutoff);
                const auto sm = evaluate_baseline(pred, gt);
                sweep.push_back({{"size", size},
                                 {"precision", sm.precision},
                                 {"recall", sm.recall},
                                 {"degenerate", sm.precision_degenerate}});
            }
            entry["size_sweep"] = sweep;
        }
        results.push_back(entry);
    }

    json j{{"command", "baseline"},
           {"data_dir", opt.data_dir},
           {"kind", opt.kind},
           {"cutoff", opt.cutoff},
           {"seed", opt.seed},
           {"results", results},
           {"generated_at", iso_timestamp()}};
    write_json(j, join(opt.out_dir, "baseline_metrics.json"));
}

}  // namespace osn
