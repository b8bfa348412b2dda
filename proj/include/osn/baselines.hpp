#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "osn/attacks.hpp"
#include "osn/datamodel.hpp"
#include "osn/learner.hpp"

namespace osn {

enum class BaselineKind { knn, cart, forest, svm };

const char* baseline_name(BaselineKind k);
std::optional<BaselineKind> baseline_from_name(const std::string& name);

struct BaselineParams {
    int knn_k = 5;
    int tree_max_depth = 10;
    int tree_min_leaf = 1;
    int forest_trees = 400;
    std::uint64_t seed = 0;
};

// Axis-aligned binary split tree; leaves hold the coupled fraction.
struct TreeNode {
    int feature = -1;      // -1 marks a leaf
    double threshold = 0.0;
    double leaf_score = 0.0;
    std::unique_ptr<TreeNode> left, right;  // left: value <= threshold
};

// Pair classifier over an attribute subset (the strong identifiers by
// default); judges each pair independently of all others.
struct BaselineModel {
    BaselineKind kind = BaselineKind::knn;
    std::vector<Attribute> attributes;  // subset used, fixed at training
    ImputationTable imputation;
    BaselineParams params;
    // knn
    std::vector<std::vector<double>> train_x;
    std::vector<int> train_y;
    // cart / forest
    std::vector<std::unique_ptr<TreeNode>> trees;
    // svm
    MatchModel svm;
};

// The paper's baseline uses the strong identifiers; graph joins in for
// structured-network runs.
std::vector<Attribute> strong_identifier_attributes(bool include_graph);

BaselineModel train_baseline(BaselineKind kind, const TrainingSet& ts,
                             const std::vector<Attribute>& attributes,
                             const BaselineParams& params);

// Probability-like score per pair: knn vote fraction, tree leaf fraction,
// forest mean, sigmoid SVM margin.
double baseline_score(const BaselineModel& model, const SimilarityVector& sv);

struct ScoredPair {
    std::string aux_id;
    std::string target_id;
    double score = 0.0;
};

// Keeps pairs with score strictly above the cutoff.
std::vector<ScoredPair> classify_pairs(const BaselineModel& model,
                                       const std::vector<ScoredPair>& scored, double cutoff);

// Scores every (aux, tgt) profile pair; parallel over aux rows.
std::vector<ScoredPair> score_all_pairs(const BaselineModel& model, const Dataset& aux,
                                        const Dataset& tgt, const Resources& res, int jobs = 1);

// precision = predicted coupled / |predicted|; recall over gt.coupled;
// no assignment step.
Metrics evaluate_baseline(const std::vector<ScoredPair>& predicted, const GroundTruth& gt);

}  // namespace osn
