#include "osn/learner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "osn/rng.hpp"

namespace osn {

using nlohmann::json;

std::array<bool, kNumAttributes> selector_mask(AttributeSelector sel) {
    std::array<bool, kNumAttributes> mask{};
    auto enable = [&](std::initializer_list<Attribute> attrs) {
        for (auto a : attrs) mask[static_cast<int>(a)] = true;
    };
    switch (sel) {
        case AttributeSelector::all:
            mask.fill(true);
            break;
        case AttributeSelector::weak:
            enable({Attribute::activity, Attribute::freetext, Attribute::interest,
                    Attribute::sentiment});
            break;
        case AttributeSelector::strong:
            enable({Attribute::username, Attribute::location, Attribute::gender,
                    Attribute::photo});
            break;
        case AttributeSelector::graph_only:
            enable({Attribute::graph});
            break;
    }
    return mask;
}

const char* selector_name(AttributeSelector sel) {
    switch (sel) {
        case AttributeSelector::all: return "all";
        case AttributeSelector::weak: return "weak";
        case AttributeSelector::strong: return "strong";
        case AttributeSelector::graph_only: return "graph";
    }
    return "?";
}

std::optional<AttributeSelector> selector_from_name(const std::string& name) {
    if (name == "all") return AttributeSelector::all;
    if (name == "weak") return AttributeSelector::weak;
    if (name == "strong") return AttributeSelector::strong;
    if (name == "graph") return AttributeSelector::graph_only;
    return std::nullopt;
}

namespace {

constexpr int kImputationBins = 20;

double bin_center(int k) { return (k + 0.5) / kImputationBins; }

int bin_of(double v) {
    int k = static_cast<int>(v * kImputationBins);
    return std::clamp(k, 0, kImputationBins - 1);
}

}  // namespace

// Per attribute, over present values only: 20-bin histograms of the coupled
// and uncoupled similarity densities. The imputed value is the center of the
// bin with the smallest density gap among bins lying between the two class
// means; ties resolve toward the midpoint of the means, then the lower bin.
// An attribute with no present values imputes 0.5.
ImputationTable fit_imputation(const TrainingSet& ts) {
    ImputationTable table;
    for (int a = 0; a < kNumAttributes; ++a) {
        std::array<double, kImputationBins> hist_c{}, hist_u{};
        double sum_c = 0.0, sum_u = 0.0;
        std::size_t n_c = 0, n_u = 0;
        for (const auto& row : ts.rows) {
            const auto& v = row.features.values[a];
            if (!v) continue;
            if (row.label == 1) {
                hist_c[bin_of(*v)] += 1.0;
                sum_c += *v;
                ++n_c;
            } else {
                hist_u[bin_of(*v)] += 1.0;
                sum_u += *v;
                ++n_u;
            }
        }
        auto& entry = table.entries[a];
        if (n_c == 0 && n_u == 0) {
            entry = {0.5, false};
            continue;
        }
        for (auto& h : hist_c) h /= std::max<std::size_t>(n_c, 1);
        for (auto& h : hist_u) h /= std::max<std::size_t>(n_u, 1);

        const double mean_c = n_c ? sum_c / n_c : 0.5;
        const double mean_u = n_u ? sum_u / n_u : 0.5;
        const double lo = std::min(mean_c, mean_u), hi = std::max(mean_c, mean_u);
        const double mid = (mean_c + mean_u) / 2.0;

        int best = -1;
        double best_gap = 0.0, best_dist = 0.0;
        auto consider = [&](int k) {
            const double gap = std::abs(hist_c[k] - hist_u[k]);
            const double dist = std::abs(bin_center(k) - mid);
            if (best < 0 || gap < best_gap - 1e-12 ||
                (std::abs(gap - best_gap) <= 1e-12 && dist < best_dist - 1e-12)) {
                best = k;
                best_gap = gap;
                best_dist = dist;
            }
        };
        for (int k = 0; k < kImputationBins; ++k) {
            if (bin_center(k) >= lo && bin_center(k) <= hi) consider(k);
        }
        if (best < 0) {  // means inside one bin: no center in range
            for (int k = 0; k < kImputationBins; ++k) consider(k);
        }
        entry = {bin_center(best), true};
    }
    return table;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::vector<std::vector<double>> impute_rows(const TrainingSet& ts, const ImputationTable& imp) {
    std::vector<std::vector<double>> x;
    x.reserve(ts.rows.size());
    for (const auto& row : ts.rows) {
        std::vector<double> v(kNumAttributes);
        for (int a = 0; a < kNumAttributes; ++a) {
            v[a] = row.features.values[a] ? *row.features.values[a] : imp.entries[a].value;
        }
        x.push_back(std::move(v));
    }
    return x;
}

void check_two_classes(const TrainingSet& ts) {
    bool has_pos = false, has_neg = false;
    for (const auto& row : ts.rows) {
        (row.label == 1 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg) {
        throw DataError("training set must contain both coupled and uncoupled rows");
    }
}

std::vector<Attribute> canonical_attribute_vector() {
    std::vector<Attribute> order(kNumAttributes);
    for (int i = 0; i < kNumAttributes; ++i) order[i] = static_cast<Attribute>(i);
    return order;
}

}  // namespace

double LogregObjective::loss(const std::vector<double>& w, double b) const {
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double z = b;
        for (int a = 0; a < kNumAttributes; ++a) {
            if (active[a]) z += w[a] * x[i][a];
        }
        // numerically stable -[y log p + (1-y) log(1-p)]
        const double zy = y[i] == 1 ? z : -z;
        total += zy >= 0.0 ? std::log1p(std::exp(-zy)) : -zy + std::log1p(std::exp(zy));
    }
    total /= static_cast<double>(x.size());
    for (int a = 0; a < kNumAttributes; ++a) {
        if (active[a]) total += 0.5 * l2 * w[a] * w[a];
    }
    return total;
}

void LogregObjective::gradient(const std::vector<double>& w, double b, std::vector<double>& gw,
                               double& gb) const {
    gw.assign(kNumAttributes, 0.0);
    gb = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double z = b;
        for (int a = 0; a < kNumAttributes; ++a) {
            if (active[a]) z += w[a] * x[i][a];
        }
        const double err = sigmoid(z) - y[i];
        for (int a = 0; a < kNumAttributes; ++a) {
            if (active[a]) gw[a] += err * x[i][a];
        }
        gb += err;
    }
    const auto n = static_cast<double>(x.size());
    for (int a = 0; a < kNumAttributes; ++a) {
        gw[a] = active[a] ? gw[a] / n + l2 * w[a] : 0.0;
    }
    gb /= n;
}

LogregObjective make_logreg_objective(const TrainingSet& ts, const ImputationTable& imp,
                                      double l2,
                                      const std::array<bool, kNumAttributes>& active) {
    LogregObjective obj;
    obj.x = impute_rows(ts, imp);
    obj.y.reserve(ts.rows.size());
    for (const auto& row : ts.rows) obj.y.push_back(row.label);
    obj.l2 = l2;
    obj.active = active;
    return obj;
}

MatchModel train_logreg(const TrainingSet& ts, const ImputationTable& imp,
                        const LogregParams& params) {
    check_two_classes(ts);
    const auto obj = make_logreg_objective(ts, imp, params.l2, params.active);

    std::vector<double> w(kNumAttributes, 0.0), gw;
    double b = 0.0, gb = 0.0;
    double loss = obj.loss(w, b);
    double step = params.learning_rate;

    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        obj.gradient(w, b, gw, gb);
        double max_grad = std::abs(gb);
        for (int a = 0; a < kNumAttributes; ++a) max_grad = std::max(max_grad, std::abs(gw[a]));
        if (max_grad < 1e-6) break;

        // halve the step until the loss does not increase
        for (;;) {
            std::vector<double> w2 = w;
            for (int a = 0; a < kNumAttributes; ++a) w2[a] -= step * gw[a];
            const double b2 = b - step * gb;
            const double loss2 = obj.loss(w2, b2);
            if (!std::isfinite(loss2)) {
                throw DataError("train_logreg: loss diverged at epoch " + std::to_string(epoch));
            }
            if (loss2 <= loss || step < 1e-12) {
                w = std::move(w2);
                b = b2;
                loss = loss2;
                break;
            }
            step /= 2.0;
        }
    }

    MatchModel model;
    model.kind = ModelKind::logistic;
    model.attribute_order = canonical_attribute_vector();
    model.weights = std::move(w);
    model.bias = b;
    model.imputation = imp;
    model.active = params.active;
    model.learning_rate = params.learning_rate;
    model.l2 = params.l2;
    model.epochs = params.epochs;
    model.seed = params.seed;
    return model;
}

MatchModel train_linear_svm(const TrainingSet& ts, const ImputationTable& imp,
                            const SvmParams& params) {
    check_two_classes(ts);
    const auto x = impute_rows(ts, imp);
    const std::size_t n = x.size();

    std::vector<double> w(kNumAttributes, 0.0);
    double b = 0.0;
    Rng rng(params.seed);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;

    const double inv_sqrt_lambda = 1.0 / std::sqrt(params.lambda);
    std::uint64_t t = 0;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        rng.shuffle(order);
        for (const auto i : order) {
            ++t;
            const double eta = 1.0 / (params.lambda * static_cast<double>(t));
            const double y = ts.rows[i].label == 1 ? 1.0 : -1.0;
            double margin = b;
            for (int a = 0; a < kNumAttributes; ++a) {
                if (params.active[a]) margin += w[a] * x[i][a];
            }
            const double shrink = 1.0 - eta * params.lambda;
            for (int a = 0; a < kNumAttributes; ++a) w[a] *= shrink;
            if (y * margin < 1.0) {
                for (int a = 0; a < kNumAttributes; ++a) {
                    if (params.active[a]) w[a] += eta * y * x[i][a];
                }
                b += eta * params.lambda * y;  // unregularized, pegasos-scaled step
            }
            // project onto the 1/sqrt(lambda) ball
            double norm2 = 0.0;
            for (const auto v : w) norm2 += v * v;
            const double norm = std::sqrt(norm2);
            if (norm > inv_sqrt_lambda) {
                const double scale = inv_sqrt_lambda / norm;
                for (auto& v : w) v *= scale;
            }
            if (!std::isfinite(b) || !std::isfinite(norm)) {
                throw DataError("train_linear_svm: diverged at step " + std::to_string(t));
            }
        }
    }

    MatchModel model;
    model.kind = ModelKind::linear_svm;
    model.attribute_order = canonical_attribute_vector();
    model.weights = std::move(w);
    model.bias = b;
    model.imputation = imp;
    model.active = params.active;
    model.lambda = params.lambda;
    model.epochs = params.epochs;
    model.seed = params.seed;
    return model;
}

double score_pair(const MatchModel& model, const SimilarityVector& sv) {
    if (model.attribute_order.size() != model.weights.size()) {
        throw DataError("score_pair: attribute order / weight length mismatch");
    }
    double z = model.bias;
    std::array<bool, kNumAttributes> seen{};
    for (std::size_t i = 0; i < model.attribute_order.size(); ++i) {
        const auto attr = model.attribute_order[i];
        const int a = static_cast<int>(attr);
        if (seen[a]) throw DataError("score_pair: duplicate attribute in model order");
        seen[a] = true;
        const auto& v = sv.values[a];
        const double value = v ? *v : model.imputation.entries[a].value;
        z += model.weights[i] * value;
    }
    return sigmoid(z);
}

namespace {

const char* kind_name(ModelKind k) { return k == ModelKind::logistic ? "logistic" : "linear_svm"; }

}  // namespace

void save_match_model(const MatchModel& model, const std::string& path) {
    json j;
    j["kind"] = kind_name(model.kind);
    json order = json::array();
    for (const auto a : model.attribute_order) order.push_back(attribute_name(a));
    j["attribute_order"] = order;
    j["weights"] = model.weights;
    j["bias"] = model.bias;
    json imp = json::object();
    for (int a = 0; a < kNumAttributes; ++a) {
        imp[attribute_name(static_cast<Attribute>(a))] = {
            {"value", model.imputation.entries[a].value},
            {"had_data", model.imputation.entries[a].had_data}};
    }
    j["imputation"] = imp;
    json active = json::array();
    for (int a = 0; a < kNumAttributes; ++a) {
        if (model.active[a]) active.push_back(attribute_name(static_cast<Attribute>(a)));
    }
    j["active_attributes"] = active;
    j["hyperparameters"] = {{"learning_rate", model.learning_rate},
                            {"l2", model.l2},
                            {"lambda", model.lambda},
                            {"epochs", model.epochs},
                            {"seed", model.seed}};
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model: " + path);
    out << j.dump(2) << '\n';
}

MatchModel load_match_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model: " + path);
    json j;
    in >> j;
    MatchModel model;
    const auto kind = j["kind"].get<std::string>();
    if (kind == "logistic") {
        model.kind = ModelKind::logistic;
    } else if (kind == "linear_svm") {
        model.kind = ModelKind::linear_svm;
    } else {
        throw DataError("model: unknown kind '" + kind + "'");
    }
    for (const auto& name : j["attribute_order"]) {
        const auto a = attribute_from_name(name.get<std::string>());
        if (!a) throw DataError("model: unknown attribute '" + name.get<std::string>() + "'");
        model.attribute_order.push_back(*a);
    }
    model.weights = j["weights"].get<std::vector<double>>();
    model.bias = j["bias"].get<double>();
    for (int a = 0; a < kNumAttributes; ++a) {
        const auto& e = j["imputation"][attribute_name(static_cast<Attribute>(a))];
        model.imputation.entries[a] = {e["value"].get<double>(), e["had_data"].get<bool>()};
    }
    model.active.fill(false);
    for (const auto& name : j["active_attributes"]) {
        const auto a = attribute_from_name(name.get<std::string>());
        if (!a) throw DataError("model: unknown active attribute");
        model.active[static_cast<int>(*a)] = true;
    }
    const auto& h = j["hyperparameters"];
    model.learning_rate = h["learning_rate"].get<double>();
    model.l2 = h["l2"].get<double>();
    model.lambda = h["lambda"].get<double>();
    model.epochs = h["epochs"].get<int>();
    model.seed = h["seed"].get<std::uint64_t>();
    return model;
}

}  // namespace osn
