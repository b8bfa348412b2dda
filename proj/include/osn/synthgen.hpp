#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "osn/datamodel.hpp"
#include "osn/nlp.hpp"
#include "osn/tables.hpp"

namespace osn {

// Per-view noise knobs: how often each attribute goes missing and how hard
// the present values are perturbed.
struct NoiseConfig {
    std::array<double, kNumAttributes> missing_prob{};  // indexed by Attribute
    int username_edits = 0;            // uniform 0..n random edit ops
    double location_jitter_km = 0.0;   // gaussian displacement
    double activity_offset_secs = 0.0; // per-profile shift + per-entry jitter
    double topic_drift = 0.0;          // mix weight toward a random mixture
    double sentiment_drift = 0.0;      // gaussian on the daily level
    double embedding_noise_std = 0.0;  // per-dim, renormalized after
    double gender_flip_prob = 0.0;
    std::uint64_t seed = 0;
};

// Named presets used by the experiment harness: low, medium, high.
NoiseConfig noise_preset(const std::string& name, std::uint64_t seed);

void save_noise_config(const NoiseConfig& cfg, const std::string& path);
NoiseConfig load_noise_config(const std::string& path);

// Word/name/place pools the generator samples from.
struct SynthVocab {
    struct NameEntry {
        std::string name;
        std::uint64_t female = 0;
        std::uint64_t male = 0;
    };
    struct CityEntry {
        std::string name;
        Coordinates coords;
    };
    std::vector<NameEntry> names;
    std::vector<CityEntry> cities;
    std::vector<std::vector<std::string>> topic_words;  // one list per true topic
    std::vector<std::string> positive_words;
    std::vector<std::string> negative_words;
    std::vector<std::string> organizations;

    Gazetteer gazetteer() const;
    NameGenderTable name_table() const;
};

const SynthVocab& builtin_vocab();

// A latent ground-truth person; both views derive from this.
struct Person {
    std::string username;
    std::string city;
    Coordinates home;
    bool female = false;
    std::vector<double> embedding;          // unit norm
    std::string freetext;
    std::vector<std::int64_t> activities;
    std::vector<double> topic_mixture;      // over vocab.topic_words
    std::vector<std::int64_t> post_days;    // UTC days
    std::vector<double> day_sentiment;      // base level per post day
};

struct PersonParams {
    std::size_t embedding_dim = 128;
    int posts_per_day = 1;
    int post_tokens = 12;
    int sentiment_tokens = 3;
    int min_activities = 10;
    int max_activities = 20;
    int min_post_days = 8;
    int max_post_days = 14;
};

std::vector<Person> generate_persons(std::size_t count, const SynthVocab& vocab,
                                     int true_topics, std::uint64_t seed,
                                     const PersonParams& params = {});

// Emits one profile per view per person. The last 2*uncoupled_extra persons
// become one-view extras (half auxiliary, half target); the rest are coupled.
// Ground truth: all coupled cross pairs plus an equal-size seeded sample of
// cross-person pairs as uncoupled.
struct ViewPair {
    Dataset aux;
    Dataset tgt;
    GroundTruth gt;
};

ViewPair emit_views(const std::vector<Person>& persons, const SynthVocab& vocab,
                    const NoiseConfig& noise_aux, const NoiseConfig& noise_tgt,
                    std::size_t uncoupled_extra, const std::string& id_prefix,
                    const PersonParams& params = {});

// A full desk-scale experiment: disjoint training and evaluation persons,
// topic-model corpus, sentiment corpus, lookup tables.
struct ExperimentSpec {
    std::size_t train_coupled = 400;
    std::size_t eval_coupled = 500;
    std::size_t eval_extra = 500;  // per side
    int true_topics = 6;
    std::size_t lda_corpus_posts = 2000;
    std::string noise_preset_name = "medium";
    std::optional<NoiseConfig> custom_noise;  // overrides the preset when set
    std::uint64_t seed = 42;
    PersonParams person_params{};
};

struct SynthExperiment {
    Dataset train_aux, train_tgt;
    GroundTruth train_gt;
    Dataset eval_aux, eval_tgt;
    GroundTruth eval_gt;
    std::vector<std::string> lda_corpus;
    std::vector<LabeledText> sentiment_corpus;
    NoiseConfig noise_aux, noise_tgt;
};

SynthExperiment make_experiment(const ExperimentSpec& spec);

// pos/neg labeled lines drawn from the sentiment vocabulary.
std::vector<LabeledText> make_sentiment_corpus(const SynthVocab& vocab, std::size_t lines,
                                               std::uint64_t seed);

}  // namespace osn
