#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "osn/datamodel.hpp"
#include "osn/tables.hpp"

namespace osn {

using TopicDistribution = std::vector<double>;  // K probabilities, sums to 1

// LDA topic model trained by collapsed Gibbs sampling.
struct LdaModel {
    int num_topics = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::uint64_t rng_seed = 0;
    std::vector<std::string> vocabulary;                // index -> token
    std::unordered_map<std::string, int> token_index;   // token -> index
    std::vector<std::vector<double>> topic_word;        // K x V, rows sum to 1
};

struct LdaParams {
    int num_topics = 20;
    double alpha = -1.0;  // <0 means the 50/K default
    double beta = 0.01;
    int iterations = 1000;
    std::uint64_t seed = 1;
};

// Trains on the tokenized corpus. Deterministic given the seed.
// Throws DataError when no document survives tokenization.
LdaModel train_lda(const std::vector<std::string>& corpus, const LdaParams& params);

// Per-post Gibbs inference (100 sweeps, seeded from the model), averaged over
// posts and renormalized. nullopt when no post has an in-vocabulary token.
std::optional<TopicDistribution> infer_topics(const LdaModel& model,
                                              const std::vector<std::string>& user_posts);

// 1 - Jensen-Shannon divergence, base-2 logs.
double interest_similarity(const TopicDistribution& a, const TopicDistribution& b);

void save_lda_model(const LdaModel& model, const std::string& path);
LdaModel load_lda_model(const std::string& path);

// Multinomial naive Bayes with Laplace smoothing.
struct SentimentModel {
    std::vector<std::string> vocabulary;
    std::unordered_map<std::string, int> token_index;
    std::vector<double> log_prob_pos;  // per token
    std::vector<double> log_prob_neg;
    double log_prior_pos = 0.0;
    double log_prior_neg = 0.0;
};

struct LabeledText {
    std::string text;
    bool positive = false;
};

// Throws DataError unless both classes are present.
SentimentModel train_sentiment(const std::vector<LabeledText>& corpus);

// Posterior probability of positive sentiment.
double sentiment_score(const SentimentModel& model, const std::string& text);

void save_sentiment_model(const SentimentModel& model, const std::string& path);
SentimentModel load_sentiment_model(const std::string& path);

// One `label<TAB>text` line per example, label in {pos,neg}.
std::vector<LabeledText> load_sentiment_corpus(const std::string& path);

// UTC day -> mean positive probability over that day's posts.
using DailySentimentProfile = std::map<std::int64_t, double>;

DailySentimentProfile daily_profile(const SentimentModel& model, const std::vector<Post>& posts);

// Over common days, 1 - mean |a(d) - b(d)|. nullopt when no day is shared.
std::optional<double> sentiment_similarity(const DailySentimentProfile& a,
                                           const DailySentimentProfile& b);

// Rule/gazetteer tagger over the seven categories. Dates, times, money and
// percent amounts come from pattern matches; locations, persons and
// organizations from table lookups.
struct EntityGazetteers {
    const Gazetteer* places = nullptr;
    const NameGenderTable* given_names = nullptr;
    const std::vector<std::string>* organizations = nullptr;
};

EntityFeatureVector extract_entities(const std::string& text, const EntityGazetteers& gaz);

}  // namespace osn
