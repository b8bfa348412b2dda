#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osn/datamodel.hpp"

namespace osn {

struct TrainingRow {
    SimilarityVector features;
    int label = 0;  // 1 = coupled, 0 = uncoupled
};

// Labeled pair rows in the canonical attribute order.
struct TrainingSet {
    std::vector<TrainingRow> rows;
    std::array<Attribute, kNumAttributes> attribute_order = canonical_order();

    static std::array<Attribute, kNumAttributes> canonical_order() {
        std::array<Attribute, kNumAttributes> order{};
        for (int i = 0; i < kNumAttributes; ++i) order[i] = static_cast<Attribute>(i);
        return order;
    }
};

// Per-attribute replacement values for missing similarities, fitted so an
// imputed value pushes a pair toward neither class.
struct ImputationTable {
    struct Entry {
        double value = 0.5;
        bool had_data = false;
    };
    std::array<Entry, kNumAttributes> entries{};

    double value(Attribute a) const { return entries[static_cast<int>(a)].value; }
};

enum class ModelKind { logistic, linear_svm };

// Learned attribute weights + bias + imputation + training metadata.
struct MatchModel {
    ModelKind kind = ModelKind::logistic;
    std::vector<Attribute> attribute_order;  // weight i belongs to attribute_order[i]
    std::vector<double> weights;
    double bias = 0.0;
    ImputationTable imputation;
    std::array<bool, kNumAttributes> active{};  // attribute selector echo
    // hyperparameters as trained
    double learning_rate = 0.0;
    double l2 = 0.0;
    double lambda = 0.0;
    int epochs = 0;
    std::uint64_t seed = 0;
};

// Which attributes a model trains on (Experiments 1-3).
enum class AttributeSelector { all, weak, strong, graph_only };

std::array<bool, kNumAttributes> selector_mask(AttributeSelector sel);
const char* selector_name(AttributeSelector sel);
std::optional<AttributeSelector> selector_from_name(const std::string& name);

// 20-bin histogram estimator for the class-neutral imputation value; see
// fit_imputation in learner.cpp for the rule.
ImputationTable fit_imputation(const TrainingSet& ts);

struct LogregParams {
    double learning_rate = 0.1;
    double l2 = 1e-4;
    int epochs = 500;
    std::uint64_t seed = 0;
    std::array<bool, kNumAttributes> active = {true, true, true, true, true,
                                               true, true, true, true};
};

// Full-batch gradient descent on L2-regularized log loss, zero init.
// The step halves whenever a step would increase the loss, so the loss
// trajectory is non-increasing. Throws DataError on divergence.
MatchModel train_logreg(const TrainingSet& ts, const ImputationTable& imp,
                        const LogregParams& params = {});

struct SvmParams {
    double lambda = 1e-3;
    int epochs = 50;
    std::uint64_t seed = 0;
    std::array<bool, kNumAttributes> active = {true, true, true, true, true,
                                               true, true, true, true};
};

// Pegasos-style primal subgradient descent on hinge loss, labels +-1,
// seeded epoch shuffle.
MatchModel train_linear_svm(const TrainingSet& ts, const ImputationTable& imp,
                            const SvmParams& params = {});

// Imputes missing slots, then sigmoid(w.x + b). The SVM margin goes through
// the same sigmoid to land in [0,1].
double score_pair(const MatchModel& model, const SimilarityVector& sv);

// Loss/gradient surface exposed for the finite-difference oracle in tests.
// Feature matrix rows are fully imputed vectors in model order.
struct LogregObjective {
    std::vector<std::vector<double>> x;
    std::vector<int> y;
    double l2 = 0.0;
    std::array<bool, kNumAttributes> active{};

    double loss(const std::vector<double>& w, double b) const;
    // gradient over (w, b); inactive components forced to zero
    void gradient(const std::vector<double>& w, double b, std::vector<double>& gw,
                  double& gb) const;
};

LogregObjective make_logreg_objective(const TrainingSet& ts, const ImputationTable& imp,
                                      double l2,
                                      const std::array<bool, kNumAttributes>& active);

void save_match_model(const MatchModel& model, const std::string& path);
MatchModel load_match_model(const std::string& path);

}  // namespace osn
