#pragma once

#include <string>
#include <unordered_set>
#include <vector>

namespace osn {

std::string to_lower(const std::string& s);

// The shared stopword list. Shipped as data/stopwords.txt for CLI overrides;
// this is the same list compiled in.
const std::unordered_set<std::string>& default_stopwords();

// Tokenizer used by the topic model and the sentiment classifier:
// lowercase, split on non-alphanumeric, drop tokens shorter than 3 chars
// and stopwords.
std::vector<std::string> tokenize(const std::string& text,
                                  const std::unordered_set<std::string>& stopwords);

inline std::vector<std::string> tokenize(const std::string& text) {
    return tokenize(text, default_stopwords());
}

// Raw split on non-alphanumeric boundaries, lowercased, no length or stopword
// filtering. Used by the entity tagger and gender inference.
std::vector<std::string> split_words(const std::string& text);

}  // namespace osn
