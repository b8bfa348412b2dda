#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "osn/datamodel.hpp"
#include "osn/graph.hpp"
#include "osn/learner.hpp"
#include "osn/nlp.hpp"
#include "osn/similarity.hpp"
#include "osn/tables.hpp"

namespace osn {

// Everything the per-pair similarity computation needs beyond the profiles:
// lookup tables, trained text models, per-network graph features, decay
// scales. Immutable once assembled; shared across worker threads.
struct Resources {
    Gazetteer gazetteer;
    NameGenderTable gender_table;
    std::vector<std::string> organizations;
    std::optional<LdaModel> lda;
    std::optional<SentimentModel> sentiment;
    // node id -> degree feature vector, one map per network
    std::unordered_map<std::string, GraphFeatureVector> graph_features_aux;
    std::unordered_map<std::string, GraphFeatureVector> graph_features_tgt;
    double location_tau_km = 50.0;
    double activity_tau_secs = 3600.0;

    EntityGazetteers entity_gazetteers() const {
        return EntityGazetteers{&gazetteer, &gender_table, &organizations};
    }
};

enum class Side { aux, tgt };

// Attribute-level values derived once per profile; similarity vectors are
// then cheap pairwise combinations.
struct ProfileFeatures {
    std::optional<std::string> username;
    std::optional<Coordinates> coords;
    std::optional<double> gender_prob;
    std::optional<std::vector<double>> embedding;
    std::optional<EntityFeatureVector> entities;
    std::vector<std::int64_t> activities;
    std::optional<TopicDistribution> topics;
    DailySentimentProfile daily_sentiment;
    std::optional<GraphFeatureVector> graph_feature;
};

ProfileFeatures extract_features(const Profile& p, const Resources& res, Side side);

SimilarityVector compute_similarity_vector(const ProfileFeatures& a, const ProfileFeatures& b,
                                           const Resources& res);

// Convenience form over raw profiles; a is read as auxiliary-side, b as
// target-side (graph feature lookup).
SimilarityVector compute_similarity_vector(const Profile& a, const Profile& b,
                                           const Resources& res);

// Feature extraction for a whole dataset, parallel over profiles.
std::unordered_map<std::string, ProfileFeatures> extract_all_features(const Dataset& ds,
                                                                      const Resources& res,
                                                                      Side side, int jobs = 1);

// One labeled row per ground-truth pair: coupled 1, uncoupled 0.
TrainingSet build_training_set(const GroundTruth& gt, const Dataset& aux, const Dataset& tgt,
                               const Resources& res, int jobs = 1);

// Z_ij = score_pair(model, similarity vector of (aux i, tgt j)); parallel
// over rows, output independent of worker count.
SimilarityMatrix build_similarity_matrix(const Dataset& aux,
                                         const std::vector<std::string>& aux_ids,
                                         const Dataset& tgt,
                                         const std::vector<std::string>& tgt_ids,
                                         const MatchModel& model, const Resources& res,
                                         int jobs = 1);

}  // namespace osn
