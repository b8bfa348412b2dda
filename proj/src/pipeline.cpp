#include "osn/pipeline.hpp"

#include <algorithm>
#include <thread>

namespace osn {

ProfileFeatures extract_features(const Profile& p, const Resources& res, Side side) {
    ProfileFeatures f;
    if (p.username && !p.username->empty()) f.username = p.username;
    if (p.location) f.coords = resolve_location(*p.location, res.gazetteer);
    f.gender_prob = infer_gender(p, res.gender_table);
    if (p.photo_embedding) f.embedding = p.photo_embedding;
    if (p.freetext && !p.freetext->empty()) {
        const auto v = extract_entities(*p.freetext, res.entity_gazetteers());
        if (!v.all_zero()) f.entities = v;
    }
    f.activities = p.activities;
    if (res.lda && !p.posts.empty()) {
        std::vector<std::string> texts;
        texts.reserve(p.posts.size());
        for (const auto& post : p.posts) texts.push_back(post.text);
        f.topics = infer_topics(*res.lda, texts);
    }
    if (res.sentiment && !p.posts.empty()) {
        f.daily_sentiment = daily_profile(*res.sentiment, p.posts);
    }
    const auto& gmap = side == Side::aux ? res.graph_features_aux : res.graph_features_tgt;
    auto it = gmap.find(p.id);
    if (it != gmap.end()) f.graph_feature = it->second;
    return f;
}

SimilarityVector compute_similarity_vector(const ProfileFeatures& a, const ProfileFeatures& b,
                                           const Resources& res) {
    SimilarityVector sv;
    if (a.username && b.username) {
        sv[Attribute::username] = sim_username(*a.username, *b.username);
    }
    if (a.coords && b.coords) {
        sv[Attribute::location] = sim_location(*a.coords, *b.coords, res.location_tau_km);
    }
    if (a.gender_prob && b.gender_prob) {
        sv[Attribute::gender] = sim_gender(*a.gender_prob, *b.gender_prob);
    }
    if (a.embedding && b.embedding) {
        sv[Attribute::photo] = sim_photo(*a.embedding, *b.embedding);
    }
    if (a.entities && b.entities) {
        sv[Attribute::freetext] = sim_freetext(*a.entities, *b.entities);
    }
    sv[Attribute::activity] = sim_activity(a.activities, b.activities, res.activity_tau_secs);
    if (a.topics && b.topics) {
        sv[Attribute::interest] = interest_similarity(*a.topics, *b.topics);
    }
    sv[Attribute::sentiment] = sentiment_similarity(a.daily_sentiment, b.daily_sentiment);
    if (a.graph_feature && b.graph_feature) {
        sv[Attribute::graph] = sim_graph(*a.graph_feature, *b.graph_feature);
    }
    return sv;
}

SimilarityVector compute_similarity_vector(const Profile& a, const Profile& b,
                                           const Resources& res) {
    return compute_similarity_vector(extract_features(a, res, Side::aux),
                                     extract_features(b, res, Side::tgt), res);
}

namespace {

// Runs fn(i) for i in [0, count) across `jobs` threads, blocks of contiguous
// indices. fn must only write state owned by index i.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    const int workers = std::max(1, jobs);
    if (workers == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> threads;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

}  // namespace

std::unordered_map<std::string, ProfileFeatures> extract_all_features(const Dataset& ds,
                                                                      const Resources& res,
                                                                      Side side, int jobs) {
    std::vector<ProfileFeatures> features(ds.profiles.size());
    parallel_for(ds.profiles.size(), jobs,
                 [&](std::size_t i) { features[i] = extract_features(ds.profiles[i], res, side); });
    std::unordered_map<std::string, ProfileFeatures> out;
    out.reserve(ds.profiles.size());
    for (std::size_t i = 0; i < ds.profiles.size(); ++i) {
        out.emplace(ds.profiles[i].id, std::move(features[i]));
    }
    return out;
}

TrainingSet build_training_set(const GroundTruth& gt, const Dataset& aux, const Dataset& tgt,
                               const Resources& res, int jobs) {
    if (gt.coupled.empty() || gt.uncoupled.empty()) {
        throw DataError("build_training_set: ground truth must contain both classes");
    }
    const auto aux_features = extract_all_features(aux, res, Side::aux, jobs);
    const auto tgt_features = extract_all_features(tgt, res, Side::tgt, jobs);

    auto lookup = [](const std::unordered_map<std::string, ProfileFeatures>& m,
                     const std::string& id) -> const ProfileFeatures& {
        auto it = m.find(id);
        if (it == m.end()) throw DataError("build_training_set: unknown id '" + id + "'");
        return it->second;
    };

    TrainingSet ts;
    ts.rows.reserve(gt.coupled.size() + gt.uncoupled.size());
    for (const auto& [a, t] : gt.coupled) {
        ts.rows.push_back(
            {compute_similarity_vector(lookup(aux_features, a), lookup(tgt_features, t), res), 1});
    }
    for (const auto& [a, t] : gt.uncoupled) {
        ts.rows.push_back(
            {compute_similarity_vector(lookup(aux_features, a), lookup(tgt_features, t), res), 0});
    }
    return ts;
}

SimilarityMatrix build_similarity_matrix(const Dataset& aux,
                                         const std::vector<std::string>& aux_ids,
                                         const Dataset& tgt,
                                         const std::vector<std::string>& tgt_ids,
                                         const MatchModel& model, const Resources& res,
                                         int jobs) {
    std::vector<const Profile*> aux_profiles, tgt_profiles;
    for (const auto& id : aux_ids) {
        const auto* p = aux.find(id);
        if (!p) throw DataError("build_similarity_matrix: unknown aux id '" + id + "'");
        aux_profiles.push_back(p);
    }
    for (const auto& id : tgt_ids) {
        const auto* p = tgt.find(id);
        if (!p) throw DataError("build_similarity_matrix: unknown target id '" + id + "'");
        tgt_profiles.push_back(p);
    }

    std::vector<ProfileFeatures> fa(aux_ids.size()), ft(tgt_ids.size());
    parallel_for(aux_ids.size(), jobs,
                 [&](std::size_t i) { fa[i] = extract_features(*aux_profiles[i], res, Side::aux); });
    parallel_for(tgt_ids.size(), jobs,
                 [&](std::size_t j) { ft[j] = extract_features(*tgt_profiles[j], res, Side::tgt); });

    auto z = SimilarityMatrix::zeros(aux_ids, tgt_ids);
    parallel_for(aux_ids.size(), jobs, [&](std::size_t i) {
        for (std::size_t j = 0; j < tgt_ids.size(); ++j) {
            z.at(i, j) = score_pair(model, compute_similarity_vector(fa[i], ft[j], res));
        }
    });
    return z;
}

}  // namespace osn
