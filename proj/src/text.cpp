#include "osn/text.hpp"

#include <cctype>

namespace osn {

std::string to_lower(const std::string& s) {
    std::string out = s;
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

const std::unordered_set<std::string>& default_stopwords() {
    static const std::unordered_set<std::string> words = {
        "the",   "and",   "for",   "are",   "but",   "not",   "you",    "all",   "any",
        "can",   "her",   "was",   "one",   "our",   "out",   "day",    "get",   "has",
        "him",   "his",   "how",   "man",   "new",   "now",   "old",    "see",   "two",
        "way",   "who",   "did",   "its",   "let",   "put",   "say",    "she",   "too",
        "use",   "that",  "with",  "have",  "this",  "will",  "your",   "from",  "they",
        "know",  "want",  "been",  "much",  "some",  "time",  "very",   "when",
        "come",  "here",  "just",  "like",  "long",  "make",  "many",   "more",  "only",
        "over",  "such",  "take",  "than",  "them",  "well",  "were",   "what",  "into",
        "about", "after", "again", "could", "every", "first", "their",  "there", "these",
        "thing", "think", "those", "where", "which", "while", "would",  "other", "still",
        "being", "doing", "going", "might", "never", "often", "really", "should",
    };
    return words;
}

std::vector<std::string> tokenize(const std::string& text,
                                  const std::unordered_set<std::string>& stopwords) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (cur.size() >= 3 && !stopwords.count(cur)) out.push_back(cur);
        cur.clear();
    };
    for (const char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (const char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace osn
