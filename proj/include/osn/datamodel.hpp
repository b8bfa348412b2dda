#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace osn {

// Raised on malformed input files and invariant violations.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

enum class Gender { male, female, unstated };

struct Coordinates {
    double lat = 0.0;
    double lon = 0.0;
    bool operator==(const Coordinates&) const = default;
};

// Location as supplied by a profile: free text, coordinates, or both.
// Coordinates take precedence when both are present.
struct Location {
    std::optional<std::string> text;
    std::optional<Coordinates> coords;
    bool operator==(const Location&) const = default;
};

struct Post {
    std::int64_t ts = 0;  // epoch seconds
    std::string text;
    bool operator==(const Post&) const = default;
};

// One user's public attributes in one network.
struct Profile {
    std::string id;
    std::optional<std::string> username;
    std::optional<Location> location;
    Gender gender = Gender::unstated;
    std::optional<std::vector<double>> photo_embedding;
    std::optional<std::string> freetext;
    std::vector<std::int64_t> activities;  // epoch seconds, non-decreasing
    std::vector<Post> posts;
    std::vector<std::string> neighbors;  // ids within the same network

    bool operator==(const Profile&) const = default;
};

enum class NetworkLabel { auxiliary, target };
enum class DatasetRole { training, evaluation };

struct Dataset {
    NetworkLabel network_label = NetworkLabel::auxiliary;
    DatasetRole role = DatasetRole::training;
    std::vector<Profile> profiles;           // load order preserved
    std::unordered_map<std::string, std::size_t> index;  // id -> position
    std::size_t embedding_dim = 128;

    const Profile* find(const std::string& id) const {
        auto it = index.find(id);
        return it == index.end() ? nullptr : &profiles[it->second];
    }
    bool operator==(const Dataset& o) const {
        return network_label == o.network_label && role == o.role &&
               profiles == o.profiles && embedding_dim == o.embedding_dim;
    }
};

// Coupled (same real person) and uncoupled (different persons) cross-network
// pairs. Coupled pairs form a partial bijection.
struct GroundTruth {
    std::vector<std::pair<std::string, std::string>> coupled;    // (aux_id, target_id)
    std::vector<std::pair<std::string, std::string>> uncoupled;

    bool is_coupled(const std::string& aux_id, const std::string& target_id) const;
};

// The nine per-pair attributes, in canonical order.
enum class Attribute : int {
    username = 0,
    location,
    gender,
    photo,
    freetext,
    activity,
    interest,
    sentiment,
    graph,
};

inline constexpr int kNumAttributes = 9;

const char* attribute_name(Attribute a);
std::optional<Attribute> attribute_from_name(const std::string& name);

// Per-attribute similarity scores for one candidate pair; nullopt = missing.
struct SimilarityVector {
    std::array<std::optional<double>, kNumAttributes> values{};

    std::optional<double>& operator[](Attribute a) { return values[static_cast<int>(a)]; }
    const std::optional<double>& operator[](Attribute a) const {
        return values[static_cast<int>(a)];
    }
    int present_count() const {
        int n = 0;
        for (const auto& v : values) n += v.has_value() ? 1 : 0;
        return n;
    }
};

// Dense row-major score matrix between an auxiliary and a target id list.
struct SimilarityMatrix {
    std::vector<std::string> row_ids;  // auxiliary side
    std::vector<std::string> col_ids;  // target side
    std::vector<double> z;             // rows*cols, row-major

    std::size_t rows() const { return row_ids.size(); }
    std::size_t cols() const { return col_ids.size(); }
    double& at(std::size_t i, std::size_t j) { return z[i * col_ids.size() + j]; }
    double at(std::size_t i, std::size_t j) const { return z[i * col_ids.size() + j]; }

    static SimilarityMatrix zeros(std::vector<std::string> rows, std::vector<std::string> cols) {
        SimilarityMatrix m;
        m.row_ids = std::move(rows);
        m.col_ids = std::move(cols);
        m.z.assign(m.row_ids.size() * m.col_ids.size(), 0.0);
        return m;
    }
};

// JSONL profile loader. Unknown fields are ignored; absent attributes stay
// missing/empty. Throws DataError with the offending line number.
Dataset load_profiles(const std::string& path, NetworkLabel label, DatasetRole role);

// Writes one JSON object per profile, matching the load_profiles schema.
void save_profiles(const Dataset& ds, const std::string& path);

// CSV `aux_id,target_id,label` with label in {0,1}.
GroundTruth load_ground_truth(const std::string& path, const Dataset& aux, const Dataset& tgt);

void save_ground_truth(const GroundTruth& gt, const std::string& path);

// Validation shared by load_profiles and synthetic generation.
void validate_profile(const Profile& p, std::size_t embedding_dim);
void validate_dataset(const Dataset& ds);

}  // namespace osn
