#include "osn/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "osn/rng.hpp"

namespace osn {

using nlohmann::json;

namespace {

constexpr std::int64_t kEpochBase = 1700000000;  // generation window start
constexpr int kWindowDays = 30;

void set_missing(NoiseConfig& cfg, Attribute a, double p) {
    cfg.missing_prob[static_cast<int>(a)] = p;
}

}  // namespace

NoiseConfig noise_preset(const std::string& name, std::uint64_t seed) {
    NoiseConfig cfg;
    cfg.seed = seed;
    // graph data never comes from these presets; the slot stays missing
    set_missing(cfg, Attribute::graph, 1.0);
    if (name == "low") {
        for (const auto a : {Attribute::username, Attribute::location, Attribute::gender,
                             Attribute::photo, Attribute::freetext, Attribute::activity,
                             Attribute::interest, Attribute::sentiment}) {
            set_missing(cfg, a, 0.05);
        }
        cfg.username_edits = 0;
        cfg.location_jitter_km = 2.0;
        cfg.activity_offset_secs = 120.0;
        cfg.topic_drift = 0.05;
        cfg.sentiment_drift = 0.05;
        cfg.embedding_noise_std = 0.05;
        cfg.gender_flip_prob = 0.01;
    } else if (name == "medium") {
        // strong identifiers stay fairly clean; the weak ones drift hard,
        // mirroring how the paper's weak identifiers underperform
        for (const auto a : {Attribute::username, Attribute::location, Attribute::gender,
                             Attribute::photo}) {
            set_missing(cfg, a, 0.08);
        }
        for (const auto a : {Attribute::freetext, Attribute::activity, Attribute::interest,
                             Attribute::sentiment}) {
            set_missing(cfg, a, 0.3);
        }
        cfg.username_edits = 1;
        cfg.location_jitter_km = 10.0;
        cfg.activity_offset_secs = 14400.0;
        cfg.topic_drift = 0.55;
        cfg.sentiment_drift = 0.3;
        // per-dim noise scales with sqrt(dim); 0.08 keeps coupled cosines
        // near 0.74 at the default 128 dims
        cfg.embedding_noise_std = 0.08;
        cfg.gender_flip_prob = 0.05;
    } else if (name == "high") {
        for (const auto a : {Attribute::username, Attribute::location, Attribute::gender,
                             Attribute::photo, Attribute::freetext, Attribute::activity,
                             Attribute::interest, Attribute::sentiment}) {
            set_missing(cfg, a, 0.5);
        }
        cfg.username_edits = 5;
        cfg.location_jitter_km = 400.0;
        cfg.activity_offset_secs = 10800.0;
        cfg.topic_drift = 0.6;
        cfg.sentiment_drift = 0.3;
        cfg.embedding_noise_std = 1.0;
        cfg.gender_flip_prob = 0.2;
    } else {
        throw DataError("unknown noise preset '" + name + "'");
    }
    return cfg;
}

void save_noise_config(const NoiseConfig& cfg, const std::string& path) {
    json j;
    json missing = json::object();
    for (int a = 0; a < kNumAttributes; ++a) {
        missing[attribute_name(static_cast<Attribute>(a))] = cfg.missing_prob[a];
    }
    j["missing_prob"] = missing;
    j["username_edits"] = cfg.username_edits;
    j["location_jitter_km"] = cfg.location_jitter_km;
    j["activity_offset_secs"] = cfg.activity_offset_secs;
    j["topic_drift"] = cfg.topic_drift;
    j["sentiment_drift"] = cfg.sentiment_drift;
    j["embedding_noise_std"] = cfg.embedding_noise_std;
    j["gender_flip_prob"] = cfg.gender_flip_prob;
    j["seed"] = cfg.seed;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write noise config: " + path);
    out << j.dump(2) << '\n';
}

NoiseConfig load_noise_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open noise config: " + path);
    json j;
    in >> j;
    NoiseConfig cfg;
    for (int a = 0; a < kNumAttributes; ++a) {
        const auto* name = attribute_name(static_cast<Attribute>(a));
        if (j["missing_prob"].contains(name)) {
            cfg.missing_prob[a] = j["missing_prob"][name].get<double>();
        }
    }
    cfg.username_edits = j["username_edits"].get<int>();
    cfg.location_jitter_km = j["location_jitter_km"].get<double>();
    cfg.activity_offset_secs = j["activity_offset_secs"].get<double>();
    cfg.topic_drift = j["topic_drift"].get<double>();
    cfg.sentiment_drift = j["sentiment_drift"].get<double>();
    cfg.embedding_noise_std = j["embedding_noise_std"].get<double>();
    cfg.gender_flip_prob = j["gender_flip_prob"].get<double>();
    cfg.seed = j["seed"].get<std::uint64_t>();
    return cfg;
}

namespace {

double gamma_sample(Rng& rng, double shape) {
    if (shape < 1.0) {
        double u = 0.0;
        while (u <= 0.0) u = rng.uniform();
        return gamma_sample(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = rng.gauss();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::vector<double> dirichlet(Rng& rng, std::size_t k, double alpha) {
    std::vector<double> x(k);
    double total = 0.0;
    for (auto& v : x) {
        v = gamma_sample(rng, alpha);
        total += v;
    }
    if (total <= 0.0) {
        for (auto& v : x) v = 1.0 / static_cast<double>(k);
        return x;
    }
    for (auto& v : x) v /= total;
    return x;
}

std::string two_digits(std::int64_t v) {
    return (v < 10 ? "0" : "") + std::to_string(v);
}

}  // namespace

std::vector<Person> generate_persons(std::size_t count, const SynthVocab& vocab, int true_topics,
                                     std::uint64_t seed, const PersonParams& params) {
    if (count == 0) throw DataError("generate_persons: count must be >= 1");
    if (true_topics < 1 || static_cast<std::size_t>(true_topics) > vocab.topic_words.size()) {
        throw DataError("generate_persons: true_topics out of range");
    }
    Rng rng(seed);
    std::vector<Person> persons;
    persons.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Person p;
        const auto& name = vocab.names[rng.below(vocab.names.size())];
        // index keeps usernames unique; random tail keeps same-name persons
        // several edits apart, like real handles
        static const std::string tail_chars = "abcdefghijklmnopqrstuvwxyz0123456789";
        std::string tail;
        for (int t = 0; t < 3; ++t) tail.push_back(tail_chars[rng.below(tail_chars.size())]);
        p.username = name.name + "_" + std::to_string(i) + tail;
        p.female = rng.uniform() <
                   static_cast<double>(name.female) / static_cast<double>(name.female + name.male);
        const auto& city = vocab.cities[rng.below(vocab.cities.size())];
        p.city = city.name;
        p.home = city.coords;

        p.embedding.resize(params.embedding_dim);
        double norm2 = 0.0;
        for (auto& v : p.embedding) {
            v = rng.gauss();
            norm2 += v * v;
        }
        const double norm = std::sqrt(norm2);
        for (auto& v : p.embedding) v /= norm;

        std::string text = "living in " + p.city + " since " +
                           std::to_string(1980 + rng.range(0, 39)) + ".";
        if (rng.bernoulli(0.7)) {
            text += " fan of " + vocab.organizations[rng.below(vocab.organizations.size())] + ".";
        }
        if (rng.bernoulli(0.6)) {
            text += " coffee at " + std::to_string(rng.range(7, 11)) + ":" +
                    two_digits(rng.range(10, 59)) + "am.";
        }
        if (rng.bernoulli(0.5)) {
            text += " saved $" + std::to_string(rng.range(5, 999)) + " (" +
                    std::to_string(rng.range(5, 95)) + "% off).";
        }
        if (rng.bernoulli(0.6)) {
            text += " friends with " + vocab.names[rng.below(vocab.names.size())].name + ".";
        }
        p.freetext = text;

        const auto n_act = static_cast<std::size_t>(
            rng.range(params.min_activities, params.max_activities));
        p.activities.reserve(n_act);
        for (std::size_t k = 0; k < n_act; ++k) {
            p.activities.push_back(kEpochBase + rng.range(0, kWindowDays * 86400 - 1));
        }
        std::sort(p.activities.begin(), p.activities.end());

        p.topic_mixture = dirichlet(rng, static_cast<std::size_t>(true_topics), 0.5);

        const auto n_days =
            static_cast<std::size_t>(rng.range(params.min_post_days, params.max_post_days));
        std::set<std::int64_t> days;
        while (days.size() < n_days) {
            days.insert(kEpochBase / 86400 + rng.range(0, kWindowDays - 1));
        }
        p.post_days.assign(days.begin(), days.end());
        const double level = rng.uniform(0.15, 0.85);
        p.day_sentiment.reserve(p.post_days.size());
        for (std::size_t d = 0; d < p.post_days.size(); ++d) {
            p.day_sentiment.push_back(std::clamp(level + rng.gauss(0.0, 0.1), 0.05, 0.95));
        }
        persons.push_back(std::move(p));
    }
    return persons;
}

namespace {

bool missing(Rng& rng, const NoiseConfig& cfg, Attribute a) {
    return rng.uniform() < cfg.missing_prob[static_cast<int>(a)];
}

std::string mutate_username(Rng& rng, std::string name, int max_edits) {
    static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz0123456789_";
    const auto edits = rng.below(static_cast<std::uint64_t>(max_edits) + 1);
    for (std::uint64_t e = 0; e < edits; ++e) {
        const auto op = rng.below(3);
        if (op == 0) {  // insert
            const auto pos = rng.below(name.size() + 1);
            name.insert(name.begin() + pos, alphabet[rng.below(alphabet.size())]);
        } else if (op == 1 && name.size() > 1) {  // delete
            name.erase(name.begin() + rng.below(name.size()));
        } else if (!name.empty()) {  // substitute
            name[rng.below(name.size())] = alphabet[rng.below(alphabet.size())];
        }
    }
    return name;
}

Profile make_view_profile(const Person& person, const SynthVocab& vocab,
                          const NoiseConfig& noise, Rng& rng, const PersonParams& params,
                          std::string id, int true_topics) {
    Profile p;
    p.id = std::move(id);

    if (!missing(rng, noise, Attribute::username)) {
        p.username = mutate_username(rng, person.username, noise.username_edits);
    }

    if (!missing(rng, noise, Attribute::location)) {
        Location loc;
        if (noise.location_jitter_km <= 0.0) {
            loc.text = person.city;
        } else {
            const double dlat = rng.gauss(0.0, noise.location_jitter_km) / 111.32;
            const double coslat =
                std::max(0.2, std::cos(person.home.lat * 3.14159265358979323846 / 180.0));
            const double dlon = rng.gauss(0.0, noise.location_jitter_km) / (111.32 * coslat);
            loc.coords = Coordinates{std::clamp(person.home.lat + dlat, -89.9, 89.9),
                                     std::clamp(person.home.lon + dlon, -179.9, 179.9)};
        }
        p.location = loc;
    }

    if (!missing(rng, noise, Attribute::gender)) {
        bool female = person.female;
        if (rng.bernoulli(noise.gender_flip_prob)) female = !female;
        p.gender = female ? Gender::female : Gender::male;
    }

    if (!missing(rng, noise, Attribute::photo)) {
        auto emb = person.embedding;
        double norm2 = 0.0;
        for (auto& v : emb) {
            v += rng.gauss(0.0, noise.embedding_noise_std);
            norm2 += v * v;
        }
        if (norm2 > 0.0) {
            const double norm = std::sqrt(norm2);
            for (auto& v : emb) v /= norm;
            p.photo_embedding = std::move(emb);
        }
    }

    if (!missing(rng, noise, Attribute::freetext)) {
        p.freetext = person.freetext;
    }

    if (!missing(rng, noise, Attribute::activity)) {
        const double offset = rng.gauss(0.0, noise.activity_offset_secs);
        p.activities.reserve(person.activities.size());
        for (const auto ts : person.activities) {
            const double jitter = rng.gauss(0.0, noise.activity_offset_secs / 3.0);
            p.activities.push_back(ts + std::llround(offset + jitter));
        }
        std::sort(p.activities.begin(), p.activities.end());
    }

    // posts carry both the interest and the sentiment signal
    if (!missing(rng, noise, Attribute::interest)) {
        auto mixture = person.topic_mixture;
        if (noise.topic_drift > 0.0) {
            const auto other = dirichlet(rng, mixture.size(), 0.5);
            for (std::size_t k = 0; k < mixture.size(); ++k) {
                mixture[k] = (1.0 - noise.topic_drift) * mixture[k] +
                             noise.topic_drift * other[k];
            }
        }
        for (std::size_t d = 0; d < person.post_days.size(); ++d) {
            const double day_level = std::clamp(
                person.day_sentiment[d] + rng.gauss(0.0, noise.sentiment_drift), 0.02, 0.98);
            for (int q = 0; q < params.posts_per_day; ++q) {
                Post post;
                post.ts = person.post_days[d] * 86400 + rng.range(0, 86399);
                std::string text;
                for (int w = 0; w < params.post_tokens; ++w) {
                    double r = rng.uniform();
                    int topic = true_topics - 1;
                    double acc = 0.0;
                    for (int k = 0; k < true_topics; ++k) {
                        acc += mixture[k];
                        if (r < acc) {
                            topic = k;
                            break;
                        }
                    }
                    const auto& words = vocab.topic_words[topic];
                    if (w) text += ' ';
                    text += words[rng.below(words.size())];
                }
                for (int w = 0; w < params.sentiment_tokens; ++w) {
                    const auto& pool =
                        rng.bernoulli(day_level) ? vocab.positive_words : vocab.negative_words;
                    text += ' ';
                    text += pool[rng.below(pool.size())];
                }
                post.text = std::move(text);
                p.posts.push_back(std::move(post));
            }
        }
    }
    return p;
}

}  // namespace

ViewPair emit_views(const std::vector<Person>& persons, const SynthVocab& vocab,
                    const NoiseConfig& noise_aux, const NoiseConfig& noise_tgt,
                    std::size_t uncoupled_extra, const std::string& id_prefix,
                    const PersonParams& params) {
    if (persons.size() < 2 * uncoupled_extra + 1) {
        throw DataError("emit_views: not enough persons for the requested extras");
    }
    const std::size_t shared = persons.size() - 2 * uncoupled_extra;
    const int true_topics = persons.empty() ? 1 : static_cast<int>(persons[0].topic_mixture.size());

    ViewPair out;
    out.aux.network_label = NetworkLabel::auxiliary;
    out.tgt.network_label = NetworkLabel::target;
    out.aux.embedding_dim = params.embedding_dim;
    out.tgt.embedding_dim = params.embedding_dim;

    Rng rng_aux(noise_aux.seed);
    Rng rng_tgt(noise_tgt.seed);

    std::vector<std::size_t> aux_person;  // profile index -> person index
    std::vector<std::size_t> tgt_person;
    auto push_aux = [&](std::size_t pi) {
        auto profile = make_view_profile(persons[pi], vocab, noise_aux, rng_aux, params,
                                         id_prefix + "a" + std::to_string(pi), true_topics);
        out.aux.index.emplace(profile.id, out.aux.profiles.size());
        out.aux.profiles.push_back(std::move(profile));
        aux_person.push_back(pi);
    };
    auto push_tgt = [&](std::size_t pi) {
        auto profile = make_view_profile(persons[pi], vocab, noise_tgt, rng_tgt, params,
                                         id_prefix + "t" + std::to_string(pi), true_topics);
        out.tgt.index.emplace(profile.id, out.tgt.profiles.size());
        out.tgt.profiles.push_back(std::move(profile));
        tgt_person.push_back(pi);
    };

    for (std::size_t i = 0; i < shared; ++i) {
        push_aux(i);
        push_tgt(i);
        out.gt.coupled.emplace_back(id_prefix + "a" + std::to_string(i),
                                    id_prefix + "t" + std::to_string(i));
    }
    for (std::size_t i = shared; i < shared + uncoupled_extra; ++i) push_aux(i);
    for (std::size_t i = shared + uncoupled_extra; i < persons.size(); ++i) push_tgt(i);

    // balanced uncoupled sample over cross-person pairs
    Rng gt_rng(noise_aux.seed * 0x9e3779b97f4a7c15ULL + noise_tgt.seed + 0x1234567);
    std::unordered_set<std::string> taken;
    const std::size_t want = out.gt.coupled.size();
    std::size_t guard = 0;
    while (out.gt.uncoupled.size() < want && guard < want * 1000 + 1000) {
        ++guard;
        const auto i = gt_rng.below(out.aux.profiles.size());
        const auto j = gt_rng.below(out.tgt.profiles.size());
        if (aux_person[i] == tgt_person[j]) continue;
        const auto key = std::to_string(i) + ":" + std::to_string(j);
        if (!taken.insert(key).second) continue;
        out.gt.uncoupled.emplace_back(out.aux.profiles[i].id, out.tgt.profiles[j].id);
    }
    return out;
}

std::vector<LabeledText> make_sentiment_corpus(const SynthVocab& vocab, std::size_t lines,
                                               std::uint64_t seed) {
    Rng rng(seed);
    std::vector<LabeledText> corpus;
    corpus.reserve(lines);
    for (std::size_t i = 0; i < lines; ++i) {
        const bool positive = i % 2 == 0;
        const auto& main_pool = positive ? vocab.positive_words : vocab.negative_words;
        const auto& other_pool = positive ? vocab.negative_words : vocab.positive_words;
        std::string text;
        const auto words = 5 + rng.below(4);
        for (std::uint64_t w = 0; w < words; ++w) {
            const auto& pool = rng.bernoulli(0.1) ? other_pool : main_pool;
            if (w) text += ' ';
            text += pool[rng.below(pool.size())];
        }
        corpus.push_back({std::move(text), positive});
    }
    return corpus;
}

SynthExperiment make_experiment(const ExperimentSpec& spec) {
    const auto& vocab = builtin_vocab();
    SynthExperiment exp;

    if (spec.custom_noise) {
        exp.noise_aux = *spec.custom_noise;
        exp.noise_tgt = *spec.custom_noise;
        exp.noise_aux.seed = spec.seed * 1000 + 1;
        exp.noise_tgt.seed = spec.seed * 1000 + 2;
    } else {
        exp.noise_aux = noise_preset(spec.noise_preset_name, spec.seed * 1000 + 1);
        exp.noise_tgt = noise_preset(spec.noise_preset_name, spec.seed * 1000 + 2);
    }

    const auto train_persons =
        generate_persons(spec.train_coupled, vocab, spec.true_topics, spec.seed * 1000 + 11,
                         spec.person_params);
    auto train_noise_aux = exp.noise_aux;
    train_noise_aux.seed = spec.seed * 1000 + 21;
    auto train_noise_tgt = exp.noise_tgt;
    train_noise_tgt.seed = spec.seed * 1000 + 22;
    auto train = emit_views(train_persons, vocab, train_noise_aux, train_noise_tgt, 0, "tr",
                            spec.person_params);
    exp.train_aux = std::move(train.aux);
    exp.train_tgt = std::move(train.tgt);
    exp.train_gt = std::move(train.gt);
    exp.train_aux.role = DatasetRole::training;
    exp.train_tgt.role = DatasetRole::training;

    const auto eval_persons =
        generate_persons(spec.eval_coupled + 2 * spec.eval_extra, vocab, spec.true_topics,
                         spec.seed * 1000 + 12, spec.person_params);
    auto eval_noise_aux = exp.noise_aux;
    eval_noise_aux.seed = spec.seed * 1000 + 23;
    auto eval_noise_tgt = exp.noise_tgt;
    eval_noise_tgt.seed = spec.seed * 1000 + 24;
    auto eval = emit_views(eval_persons, vocab, eval_noise_aux, eval_noise_tgt, spec.eval_extra,
                           "ev", spec.person_params);
    exp.eval_aux = std::move(eval.aux);
    exp.eval_tgt = std::move(eval.tgt);
    exp.eval_gt = std::move(eval.gt);
    exp.eval_aux.role = DatasetRole::evaluation;
    exp.eval_tgt.role = DatasetRole::evaluation;

    for (const auto* ds : {&exp.train_aux, &exp.train_tgt}) {
        for (const auto& p : ds->profiles) {
            for (const auto& post : p.posts) {
                if (exp.lda_corpus.size() >= spec.lda_corpus_posts) break;
                exp.lda_corpus.push_back(post.text);
            }
            if (exp.lda_corpus.size() >= spec.lda_corpus_posts) break;
        }
    }
    exp.sentiment_corpus = make_sentiment_corpus(vocab, 240, spec.seed * 1000 + 31);
    return exp;
}

}  // namespace osn
