#include "osn/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_set>

#include "osn/rng.hpp"

namespace osn {

const char* baseline_name(BaselineKind k) {
    switch (k) {
        case BaselineKind::knn: return "knn";
        case BaselineKind::cart: return "cart";
        case BaselineKind::forest: return "forest";
        case BaselineKind::svm: return "svm";
    }
    return "?";
}

std::optional<BaselineKind> baseline_from_name(const std::string& name) {
    if (name == "knn") return BaselineKind::knn;
    if (name == "cart") return BaselineKind::cart;
    if (name == "forest") return BaselineKind::forest;
    if (name == "svm") return BaselineKind::svm;
    return std::nullopt;
}

std::vector<Attribute> strong_identifier_attributes(bool include_graph) {
    std::vector<Attribute> attrs = {Attribute::username, Attribute::location, Attribute::gender,
                                    Attribute::photo};
    if (include_graph) attrs.push_back(Attribute::graph);
    return attrs;
}

namespace {

std::vector<double> project_row(const SimilarityVector& sv, const std::vector<Attribute>& attrs,
                                const ImputationTable& imp) {
    std::vector<double> x;
    x.reserve(attrs.size());
    for (const auto a : attrs) {
        const auto& v = sv[a];
        x.push_back(v ? *v : imp.value(a));
    }
    return x;
}

double gini(double pos, double total) {
    if (total <= 0.0) return 0.0;
    const double p = pos / total;
    return 2.0 * p * (1.0 - p);
}

struct TreeBuilder {
    const std::vector<std::vector<double>>& x;
    const std::vector<int>& y;
    int max_depth;
    int min_leaf;
    Rng* feature_rng = nullptr;  // forest mode: sample sqrt(d) features per split
    int subset_size = 0;

    std::unique_ptr<TreeNode> build(std::vector<std::size_t>& idx, int depth) {
        auto node = std::make_unique<TreeNode>();
        double pos = 0.0;
        for (const auto i : idx) pos += y[i];
        const double total = static_cast<double>(idx.size());
        node->leaf_score = total > 0.0 ? pos / total : 0.0;
        if (depth >= max_depth || pos == 0.0 || pos == total ||
            idx.size() < static_cast<std::size_t>(2 * min_leaf)) {
            return node;
        }

        const int d = static_cast<int>(x[0].size());
        std::vector<int> features;
        if (feature_rng && subset_size < d) {
            for (const auto f : feature_rng->sample_indices(d, subset_size)) {
                features.push_back(static_cast<int>(f));
            }
            std::sort(features.begin(), features.end());
        } else {
            for (int f = 0; f < d; ++f) features.push_back(f);
        }

        int best_f = -1;
        double best_t = 0.0, best_impurity = gini(pos, total);
        std::vector<std::pair<double, int>> vals;
        for (const auto f : features) {
            vals.clear();
            for (const auto i : idx) vals.emplace_back(x[i][f], y[i]);
            std::sort(vals.begin(), vals.end());
            double left_pos = 0.0;
            for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
                left_pos += vals[k].second;
                if (vals[k].first == vals[k + 1].first) continue;
                const auto left_n = static_cast<double>(k + 1);
                const double right_n = total - left_n;
                if (left_n < min_leaf || right_n < min_leaf) continue;
                const double impurity = (left_n * gini(left_pos, left_n) +
                                         right_n * gini(pos - left_pos, right_n)) /
                                        total;
                if (impurity < best_impurity - 1e-12) {
                    best_impurity = impurity;
                    best_f = f;
                    best_t = (vals[k].first + vals[k + 1].first) / 2.0;
                }
            }
        }
        if (best_f < 0) return node;  // no improving split

        std::vector<std::size_t> left_idx, right_idx;
        for (const auto i : idx) {
            (x[i][best_f] <= best_t ? left_idx : right_idx).push_back(i);
        }
        node->feature = best_f;
        node->threshold = best_t;
        node->left = build(left_idx, depth + 1);
        node->right = build(right_idx, depth + 1);
        return node;
    }
};

double tree_score(const TreeNode& node, const std::vector<double>& x) {
    const TreeNode* cur = &node;
    while (cur->feature >= 0) {
        cur = x[cur->feature] <= cur->threshold ? cur->left.get() : cur->right.get();
    }
    return cur->leaf_score;
}

}  // namespace

BaselineModel train_baseline(BaselineKind kind, const TrainingSet& ts,
                             const std::vector<Attribute>& attributes,
                             const BaselineParams& params) {
    bool has_pos = false, has_neg = false;
    for (const auto& row : ts.rows) (row.label == 1 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) throw DataError("train_baseline: both classes required");
    if (attributes.empty()) throw DataError("train_baseline: empty attribute subset");

    BaselineModel model;
    model.kind = kind;
    model.attributes = attributes;
    model.imputation = fit_imputation(ts);
    model.params = params;

    if (kind == BaselineKind::svm) {
        SvmParams sp;
        sp.seed = params.seed;
        sp.active.fill(false);
        for (const auto a : attributes) sp.active[static_cast<int>(a)] = true;
        model.svm = train_linear_svm(ts, model.imputation, sp);
        return model;
    }

    std::vector<std::vector<double>> x;
    std::vector<int> y;
    x.reserve(ts.rows.size());
    for (const auto& row : ts.rows) {
        x.push_back(project_row(row.features, attributes, model.imputation));
        y.push_back(row.label);
    }

    if (kind == BaselineKind::knn) {
        model.train_x = std::move(x);
        model.train_y = std::move(y);
        return model;
    }

    if (kind == BaselineKind::cart) {
        TreeBuilder builder{x, y, params.tree_max_depth, params.tree_min_leaf, nullptr, 0};
        std::vector<std::size_t> idx(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) idx[i] = i;
        model.trees.push_back(builder.build(idx, 0));
        return model;
    }

    // forest: bagged trees, sqrt(d) features per split
    const int d = static_cast<int>(attributes.size());
    const int subset = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(d))));
    model.trees.reserve(params.forest_trees);
    for (int t = 0; t < params.forest_trees; ++t) {
        Rng rng(params.seed + static_cast<std::uint64_t>(t) * 0x9e3779b97f4a7c15ULL + 1);
        std::vector<std::size_t> idx(x.size());
        for (auto& i : idx) i = rng.below(x.size());  // bootstrap
        TreeBuilder builder{x, y, params.tree_max_depth, params.tree_min_leaf, &rng, subset};
        model.trees.push_back(builder.build(idx, 0));
    }
    return model;
}

double baseline_score(const BaselineModel& model, const SimilarityVector& sv) {
    if (model.kind == BaselineKind::svm) return score_pair(model.svm, sv);

    const auto x = project_row(sv, model.attributes, model.imputation);
    if (model.kind == BaselineKind::knn) {
        // k nearest by (squared distance, row index)
        std::vector<std::pair<double, std::size_t>> dist;
        dist.reserve(model.train_x.size());
        for (std::size_t i = 0; i < model.train_x.size(); ++i) {
            double d2 = 0.0;
            for (std::size_t f = 0; f < x.size(); ++f) {
                const double diff = x[f] - model.train_x[i][f];
                d2 += diff * diff;
            }
            dist.emplace_back(d2, i);
        }
        const auto k = std::min<std::size_t>(model.params.knn_k, dist.size());
        std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
        double votes = 0.0;
        for (std::size_t i = 0; i < k; ++i) votes += model.train_y[dist[i].second];
        return k ? votes / static_cast<double>(k) : 0.0;
    }

    double sum = 0.0;
    for (const auto& tree : model.trees) sum += tree_score(*tree, x);
    return model.trees.empty() ? 0.0 : sum / static_cast<double>(model.trees.size());
}

std::vector<ScoredPair> classify_pairs(const BaselineModel&, const std::vector<ScoredPair>& scored,
                                       double cutoff) {
    std::vector<ScoredPair> predicted;
    for (const auto& p : scored) {
        if (p.score > cutoff) predicted.push_back(p);
    }
    return predicted;
}

std::vector<ScoredPair> score_all_pairs(const BaselineModel& model, const Dataset& aux,
                                        const Dataset& tgt, const Resources& res, int jobs) {
    std::vector<std::string> aux_ids, tgt_ids;
    for (const auto& p : aux.profiles) aux_ids.push_back(p.id);
    for (const auto& p : tgt.profiles) tgt_ids.push_back(p.id);

    const auto fa = extract_all_features(aux, res, Side::aux, jobs);
    const auto ft = extract_all_features(tgt, res, Side::tgt, jobs);

    std::vector<std::vector<ScoredPair>> rows(aux_ids.size());
    const int workers = std::max(1, jobs);
    std::vector<std::thread> threads;
    const std::size_t chunk = (aux_ids.size() + workers - 1) / workers;
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& a = fa.at(aux_ids[i]);
            auto& out = rows[i];
            out.reserve(tgt_ids.size());
            for (const auto& tid : tgt_ids) {
                const auto sv = compute_similarity_vector(a, ft.at(tid), res);
                out.push_back({aux_ids[i], tid, baseline_score(model, sv)});
            }
        }
    };
    if (workers == 1) {
        worker(0, aux_ids.size());
    } else {
        for (int w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(aux_ids.size(), begin + chunk);
            if (begin >= end) break;
            threads.emplace_back(worker, begin, end);
        }
        for (auto& t : threads) t.join();
    }

    std::vector<ScoredPair> scored;
    scored.reserve(aux_ids.size() * tgt_ids.size());
    for (auto& r : rows) {
        scored.insert(scored.end(), r.begin(), r.end());
    }
    return scored;
}

Metrics evaluate_baseline(const std::vector<ScoredPair>& predicted, const GroundTruth& gt) {
    std::unordered_set<std::string> keys;
    for (const auto& [a, t] : gt.coupled) keys.insert(a + '\t' + t);

    Metrics m;
    m.coupled_total = gt.coupled.size();
    for (const auto& p : predicted) {
        if (keys.count(p.aux_id + '\t' + p.target_id)) {
            m.tp += 1.0;
        } else {
            m.fp += 1.0;
        }
    }
    if (m.tp + m.fp > 0.0) {
        m.precision = m.tp / (m.tp + m.fp);
    } else {
        m.precision = 1.0;
        m.precision_degenerate = true;
    }
    m.recall = m.coupled_total ? m.tp / static_cast<double>(m.coupled_total) : 0.0;
    m.correct = m.tp;
    m.accuracy = m.recall;
    return m;
}

}  // namespace osn
