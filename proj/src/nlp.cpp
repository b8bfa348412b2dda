#include "osn/nlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "osn/rng.hpp"
#include "osn/text.hpp"

namespace osn {

using nlohmann::json;

namespace {

std::vector<std::vector<int>> tokenize_corpus(const std::vector<std::string>& corpus,
                                              std::vector<std::string>& vocabulary,
                                              std::unordered_map<std::string, int>& token_index) {
    std::vector<std::vector<int>> docs;
    for (const auto& text : corpus) {
        const auto tokens = tokenize(text);
        if (tokens.empty()) continue;
        std::vector<int> ids;
        ids.reserve(tokens.size());
        for (const auto& t : tokens) {
            auto it = token_index.find(t);
            if (it == token_index.end()) {
                it = token_index.emplace(t, static_cast<int>(vocabulary.size())).first;
                vocabulary.push_back(t);
            }
            ids.push_back(it->second);
        }
        docs.push_back(std::move(ids));
    }
    return docs;
}

}  // namespace

LdaModel train_lda(const std::vector<std::string>& corpus, const LdaParams& params) {
    if (params.num_topics < 2) throw DataError("train_lda: need at least 2 topics");

    LdaModel model;
    model.num_topics = params.num_topics;
    model.alpha = params.alpha < 0.0 ? 50.0 / params.num_topics : params.alpha;
    model.beta = params.beta;
    model.rng_seed = params.seed;

    auto docs = tokenize_corpus(corpus, model.vocabulary, model.token_index);
    if (docs.empty()) throw DataError("train_lda: corpus empty after tokenization");
    const int K = model.num_topics;
    const int V = static_cast<int>(model.vocabulary.size());

    Rng rng(params.seed);
    const std::size_t D = docs.size();
    std::vector<std::vector<int>> assign(D);
    std::vector<std::vector<int>> doc_topic(D, std::vector<int>(K, 0));
    std::vector<std::vector<int>> topic_token(K, std::vector<int>(V, 0));
    std::vector<int> topic_total(K, 0);

    for (std::size_t d = 0; d < D; ++d) {
        assign[d].resize(docs[d].size());
        for (std::size_t i = 0; i < docs[d].size(); ++i) {
            const int k = static_cast<int>(rng.below(K));
            assign[d][i] = k;
            ++doc_topic[d][k];
            ++topic_token[k][docs[d][i]];
            ++topic_total[k];
        }
    }

    std::vector<double> weights(K);
    const double vbeta = V * model.beta;
    for (int iter = 0; iter < params.iterations; ++iter) {
        for (std::size_t d = 0; d < D; ++d) {
            for (std::size_t i = 0; i < docs[d].size(); ++i) {
                const int w = docs[d][i];
                const int old_k = assign[d][i];
                --doc_topic[d][old_k];
                --topic_token[old_k][w];
                --topic_total[old_k];

                double total = 0.0;
                for (int k = 0; k < K; ++k) {
                    total += weights[k] = (doc_topic[d][k] + model.alpha) *
                                          (topic_token[k][w] + model.beta) /
                                          (topic_total[k] + vbeta);
                }
                const double r = rng.uniform() * total;
                double acc = 0.0;
                int new_k = K - 1;
                for (int k = 0; k < K; ++k) {
                    acc += weights[k];
                    if (r < acc) {
                        new_k = k;
                        break;
                    }
                }
                assign[d][i] = new_k;
                ++doc_topic[d][new_k];
                ++topic_token[new_k][w];
                ++topic_total[new_k];
            }
        }
    }

    model.topic_word.assign(K, std::vector<double>(V, 0.0));
    for (int k = 0; k < K; ++k) {
        const double denom = topic_total[k] + vbeta;
        for (int w = 0; w < V; ++w) {
            model.topic_word[k][w] = (topic_token[k][w] + model.beta) / denom;
        }
    }
    return model;
}

namespace {

constexpr int kInferenceSweeps = 100;

TopicDistribution infer_one_post(const LdaModel& model, const std::vector<int>& tokens) {
    const int K = model.num_topics;
    Rng rng(model.rng_seed);
    std::vector<int> assign(tokens.size());
    std::vector<int> doc_topic(K, 0);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const int k = static_cast<int>(rng.below(K));
        assign[i] = k;
        ++doc_topic[k];
    }
    std::vector<double> weights(K);
    for (int sweep = 0; sweep < kInferenceSweeps; ++sweep) {
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            const int w = tokens[i];
            --doc_topic[assign[i]];
            double total = 0.0;
            for (int k = 0; k < K; ++k) {
                total += weights[k] = (doc_topic[k] + model.alpha) * model.topic_word[k][w];
            }
            const double r = rng.uniform() * total;
            double acc = 0.0;
            int new_k = K - 1;
            for (int k = 0; k < K; ++k) {
                acc += weights[k];
                if (r < acc) {
                    new_k = k;
                    break;
                }
            }
            assign[i] = new_k;
            ++doc_topic[new_k];
        }
    }
    TopicDistribution dist(K);
    const double denom = static_cast<double>(tokens.size()) + K * model.alpha;
    for (int k = 0; k < K; ++k) dist[k] = (doc_topic[k] + model.alpha) / denom;
    return dist;
}

}  // namespace

std::optional<TopicDistribution> infer_topics(const LdaModel& model,
                                              const std::vector<std::string>& user_posts) {
    const int K = model.num_topics;
    TopicDistribution mean(K, 0.0);
    int used = 0;
    for (const auto& post : user_posts) {
        std::vector<int> ids;
        for (const auto& t : tokenize(post)) {
            auto it = model.token_index.find(t);
            if (it != model.token_index.end()) ids.push_back(it->second);
        }
        if (ids.empty()) continue;  // no in-vocabulary token
        const auto dist = infer_one_post(model, ids);
        for (int k = 0; k < K; ++k) mean[k] += dist[k];
        ++used;
    }
    if (used == 0) return std::nullopt;
    double total = 0.0;
    for (auto& v : mean) {
        v /= used;
        total += v;
    }
    for (auto& v : mean) v /= total;
    return mean;
}

double interest_similarity(const TopicDistribution& a, const TopicDistribution& b) {
    double jsd = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double m = (a[k] + b[k]) / 2.0;
        if (a[k] > 0.0) jsd += 0.5 * a[k] * std::log2(a[k] / m);
        if (b[k] > 0.0) jsd += 0.5 * b[k] * std::log2(b[k] / m);
    }
    return 1.0 - std::clamp(jsd, 0.0, 1.0);
}

void save_lda_model(const LdaModel& model, const std::string& path) {
    json j;
    j["num_topics"] = model.num_topics;
    j["alpha"] = model.alpha;
    j["beta"] = model.beta;
    j["rng_seed"] = model.rng_seed;
    j["vocabulary"] = model.vocabulary;
    j["topic_word"] = model.topic_word;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write LDA model: " + path);
    out << j.dump() << '\n';
}

LdaModel load_lda_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open LDA model: " + path);
    json j;
    in >> j;
    LdaModel model;
    model.num_topics = j["num_topics"].get<int>();
    model.alpha = j["alpha"].get<double>();
    model.beta = j["beta"].get<double>();
    model.rng_seed = j["rng_seed"].get<std::uint64_t>();
    model.vocabulary = j["vocabulary"].get<std::vector<std::string>>();
    model.topic_word = j["topic_word"].get<std::vector<std::vector<double>>>();
    for (std::size_t i = 0; i < model.vocabulary.size(); ++i) {
        model.token_index.emplace(model.vocabulary[i], static_cast<int>(i));
    }
    return model;
}

SentimentModel train_sentiment(const std::vector<LabeledText>& corpus) {
    SentimentModel model;
    std::unordered_map<std::string, std::pair<std::uint64_t, std::uint64_t>> counts;  // pos, neg
    std::uint64_t docs_pos = 0, docs_neg = 0, tokens_pos = 0, tokens_neg = 0;
    for (const auto& ex : corpus) {
        (ex.positive ? docs_pos : docs_neg) += 1;
        for (const auto& t : tokenize(ex.text)) {
            auto& c = counts[t];
            if (ex.positive) {
                ++c.first;
                ++tokens_pos;
            } else {
                ++c.second;
                ++tokens_neg;
            }
        }
    }
    if (docs_pos == 0 || docs_neg == 0) {
        throw DataError("train_sentiment: both classes must be present");
    }

    model.vocabulary.reserve(counts.size());
    for (const auto& [t, c] : counts) model.vocabulary.push_back(t);
    std::sort(model.vocabulary.begin(), model.vocabulary.end());

    const double v = static_cast<double>(model.vocabulary.size());
    model.log_prob_pos.resize(model.vocabulary.size());
    model.log_prob_neg.resize(model.vocabulary.size());
    for (std::size_t i = 0; i < model.vocabulary.size(); ++i) {
        const auto& c = counts[model.vocabulary[i]];
        model.token_index.emplace(model.vocabulary[i], static_cast<int>(i));
        model.log_prob_pos[i] = std::log((c.first + 1.0) / (tokens_pos + v));
        model.log_prob_neg[i] = std::log((c.second + 1.0) / (tokens_neg + v));
    }
    const double total_docs = static_cast<double>(docs_pos + docs_neg);
    model.log_prior_pos = std::log(docs_pos / total_docs);
    model.log_prior_neg = std::log(docs_neg / total_docs);
    return model;
}

double sentiment_score(const SentimentModel& model, const std::string& text) {
    double lp = model.log_prior_pos, ln = model.log_prior_neg;
    for (const auto& t : tokenize(text)) {
        auto it = model.token_index.find(t);
        if (it == model.token_index.end()) continue;
        lp += model.log_prob_pos[it->second];
        ln += model.log_prob_neg[it->second];
    }
    return 1.0 / (1.0 + std::exp(ln - lp));
}

void save_sentiment_model(const SentimentModel& model, const std::string& path) {
    json j;
    j["vocabulary"] = model.vocabulary;
    j["log_prob_pos"] = model.log_prob_pos;
    j["log_prob_neg"] = model.log_prob_neg;
    j["log_prior_pos"] = model.log_prior_pos;
    j["log_prior_neg"] = model.log_prior_neg;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write sentiment model: " + path);
    out << j.dump() << '\n';
}

SentimentModel load_sentiment_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open sentiment model: " + path);
    json j;
    in >> j;
    SentimentModel model;
    model.vocabulary = j["vocabulary"].get<std::vector<std::string>>();
    model.log_prob_pos = j["log_prob_pos"].get<std::vector<double>>();
    model.log_prob_neg = j["log_prob_neg"].get<std::vector<double>>();
    model.log_prior_pos = j["log_prior_pos"].get<double>();
    model.log_prior_neg = j["log_prior_neg"].get<double>();
    for (std::size_t i = 0; i < model.vocabulary.size(); ++i) {
        model.token_index.emplace(model.vocabulary[i], static_cast<int>(i));
    }
    return model;
}

std::vector<LabeledText> load_sentiment_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open sentiment corpus: " + path);
    std::vector<LabeledText> corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw DataError("sentiment corpus line " + std::to_string(line_no) + ": missing tab");
        }
        const auto label = line.substr(0, tab);
        if (label != "pos" && label != "neg") {
            throw DataError("sentiment corpus line " + std::to_string(line_no) + ": label '" +
                            label + "' not in {pos,neg}");
        }
        corpus.push_back(LabeledText{line.substr(tab + 1), label == "pos"});
    }
    return corpus;
}

DailySentimentProfile daily_profile(const SentimentModel& model, const std::vector<Post>& posts) {
    std::map<std::int64_t, std::pair<double, int>> acc;  // day -> (sum, count)
    for (const auto& post : posts) {
        // UTC day via floor division (pre-1970 timestamps round down)
        std::int64_t day = post.ts / 86400;
        if (post.ts % 86400 < 0) --day;
        auto& a = acc[day];
        a.first += sentiment_score(model, post.text);
        a.second += 1;
    }
    DailySentimentProfile profile;
    for (const auto& [day, a] : acc) profile[day] = a.first / a.second;
    return profile;
}

std::optional<double> sentiment_similarity(const DailySentimentProfile& a,
                                           const DailySentimentProfile& b) {
    double sum = 0.0;
    int common = 0;
    for (const auto& [day, va] : a) {
        auto it = b.find(day);
        if (it == b.end()) continue;
        sum += std::abs(va - it->second);
        ++common;
    }
    if (common == 0) return std::nullopt;
    return 1.0 - sum / common;
}

namespace {

const std::regex& date_regex() {
    static const std::regex re(
        R"(\b\d{1,2}[/-]\d{1,2}[/-]\d{2,4}\b|\b(19|20)\d{2}\b|\b(january|february|march|april|june|july|august|september|october|november|december)\b)",
        std::regex::icase);
    return re;
}

const std::regex& time_regex() {
    static const std::regex re(R"(\b\d{1,2}:\d{2}(:\d{2})?\s?([ap]m)?|\b\d{1,2}\s?[ap]m\b)",
                               std::regex::icase);
    return re;
}

const std::regex& money_regex() {
    // multi-byte currency signs as alternations, not a byte character class
    static const std::regex re(
        R"((\$|€|£)\s?\d[\d,]*(\.\d+)?|\b\d[\d,]*(\.\d+)?\s?(dollars|euros|usd|eur|gbp)\b)",
        std::regex::icase);
    return re;
}

const std::regex& percent_regex() {
    static const std::regex re(R"(\b\d+(\.\d+)?\s?(%|percent\b))", std::regex::icase);
    return re;
}

std::uint32_t count_matches(const std::string& text, const std::regex& re) {
    return static_cast<std::uint32_t>(
        std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

// Greedy longest-match n-gram scan (up to 3 tokens) against a name set.
std::uint32_t count_ngram_hits(const std::vector<std::string>& tokens,
                               const std::function<bool(const std::string&)>& contains) {
    std::uint32_t hits = 0;
    std::size_t i = 0;
    while (i < tokens.size()) {
        bool matched = false;
        for (std::size_t len = std::min<std::size_t>(3, tokens.size() - i); len >= 1; --len) {
            std::string candidate = tokens[i];
            for (std::size_t k = 1; k < len; ++k) candidate += " " + tokens[i + k];
            if (contains(candidate)) {
                ++hits;
                i += len;
                matched = true;
                break;
            }
        }
        if (!matched) ++i;
    }
    return hits;
}

}  // namespace

EntityFeatureVector extract_entities(const std::string& text, const EntityGazetteers& gaz) {
    EntityFeatureVector v;
    if (text.empty()) return v;

    v.counts[EntityFeatureVector::date] = count_matches(text, date_regex());
    v.counts[EntityFeatureVector::time] = count_matches(text, time_regex());
    v.counts[EntityFeatureVector::money] = count_matches(text, money_regex());
    v.counts[EntityFeatureVector::percent] = count_matches(text, percent_regex());

    const auto tokens = split_words(text);
    if (gaz.places) {
        v.counts[EntityFeatureVector::location] = count_ngram_hits(
            tokens, [&](const std::string& s) { return gaz.places->entries.count(s) > 0; });
    }
    if (gaz.given_names) {
        std::uint32_t persons = 0;
        for (const auto& t : tokens) {
            if (gaz.given_names->entries.count(t)) ++persons;
        }
        v.counts[EntityFeatureVector::person] = persons;
    }
    if (gaz.organizations) {
        v.counts[EntityFeatureVector::organization] = count_ngram_hits(
            tokens, [&](const std::string& s) {
                return std::find(gaz.organizations->begin(), gaz.organizations->end(), s) !=
                       gaz.organizations->end();
            });
    }
    return v;
}

}  // namespace osn
