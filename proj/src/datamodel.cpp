#include "osn/datamodel.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace osn {

using nlohmann::json;

const char* attribute_name(Attribute a) {
    switch (a) {
        case Attribute::username: return "username";
        case Attribute::location: return "location";
        case Attribute::gender: return "gender";
        case Attribute::photo: return "photo";
        case Attribute::freetext: return "freetext";
        case Attribute::activity: return "activity";
        case Attribute::interest: return "interest";
        case Attribute::sentiment: return "sentiment";
        case Attribute::graph: return "graph";
    }
    return "?";
}

std::optional<Attribute> attribute_from_name(const std::string& name) {
    for (int i = 0; i < kNumAttributes; ++i) {
        auto a = static_cast<Attribute>(i);
        if (name == attribute_name(a)) return a;
    }
    return std::nullopt;
}

bool GroundTruth::is_coupled(const std::string& aux_id, const std::string& target_id) const {
    for (const auto& [a, t] : coupled) {
        if (a == aux_id && t == target_id) return true;
    }
    return false;
}

void validate_profile(const Profile& p, std::size_t embedding_dim) {
    if (p.id.empty()) throw DataError("profile with empty id");
    if (p.photo_embedding && p.photo_embedding->size() != embedding_dim) {
        throw DataError("profile '" + p.id + "': embedding has " +
                        std::to_string(p.photo_embedding->size()) + " dims, dataset declares " +
                        std::to_string(embedding_dim));
    }
    if (p.location && p.location->coords) {
        const auto& c = *p.location->coords;
        if (c.lat < -90.0 || c.lat > 90.0 || c.lon < -180.0 || c.lon > 180.0) {
            throw DataError("profile '" + p.id + "': coordinates out of range");
        }
    }
    if (!std::is_sorted(p.activities.begin(), p.activities.end())) {
        throw DataError("profile '" + p.id + "': activities not sorted");
    }
}

void validate_dataset(const Dataset& ds) {
    for (const auto& p : ds.profiles) {
        validate_profile(p, ds.embedding_dim);
        for (const auto& n : p.neighbors) {
            if (ds.index.find(n) == ds.index.end()) {
                throw DataError("profile '" + p.id + "': neighbor '" + n +
                                "' not in the same network");
            }
        }
    }
}

namespace {

Profile parse_profile(const json& j, std::size_t line_no) {
    if (!j.is_object()) throw DataError("line " + std::to_string(line_no) + ": not a JSON object");
    Profile p;
    if (!j.contains("id") || !j["id"].is_string()) {
        throw DataError("line " + std::to_string(line_no) + ": missing string field 'id'");
    }
    p.id = j["id"].get<std::string>();
    if (j.contains("username")) p.username = j["username"].get<std::string>();
    if (j.contains("location")) {
        const auto& jl = j["location"];
        Location loc;
        if (jl.contains("text")) loc.text = jl["text"].get<std::string>();
        if (jl.contains("lat") && jl.contains("lon")) {
            loc.coords = Coordinates{jl["lat"].get<double>(), jl["lon"].get<double>()};
        }
        if (loc.text || loc.coords) p.location = loc;
    }
    if (j.contains("gender")) {
        const auto g = j["gender"].get<std::string>();
        if (g == "male") {
            p.gender = Gender::male;
        } else if (g == "female") {
            p.gender = Gender::female;
        } else {
            throw DataError("line " + std::to_string(line_no) + ": bad gender '" + g + "'");
        }
    }
    if (j.contains("photo_embedding")) {
        p.photo_embedding = j["photo_embedding"].get<std::vector<double>>();
    }
    if (j.contains("freetext")) p.freetext = j["freetext"].get<std::string>();
    if (j.contains("activities")) p.activities = j["activities"].get<std::vector<std::int64_t>>();
    if (j.contains("posts")) {
        for (const auto& jp : j["posts"]) {
            p.posts.push_back(Post{jp["ts"].get<std::int64_t>(), jp["text"].get<std::string>()});
        }
    }
    if (j.contains("neighbors")) p.neighbors = j["neighbors"].get<std::vector<std::string>>();
    return p;
}

}  // namespace

Dataset load_profiles(const std::string& path, NetworkLabel label, DatasetRole role) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open profile file: " + path);

    Dataset ds;
    ds.network_label = label;
    ds.role = role;

    std::string line;
    std::size_t line_no = 0;
    bool dim_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError("line " + std::to_string(line_no) + ": " + e.what());
        }
        Profile p;
        try {
            p = parse_profile(j, line_no);
        } catch (const json::exception& e) {
            throw DataError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (ds.index.count(p.id)) {
            throw DataError("line " + std::to_string(line_no) + ": duplicate id '" + p.id + "'");
        }
        if (p.photo_embedding && !dim_seen) {
            ds.embedding_dim = p.photo_embedding->size();
            if (ds.embedding_dim == 0) {
                throw DataError("line " + std::to_string(line_no) + ": empty photo_embedding");
            }
            dim_seen = true;
        }
        ds.index.emplace(p.id, ds.profiles.size());
        ds.profiles.push_back(std::move(p));
    }
    validate_dataset(ds);
    return ds;
}

void save_profiles(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write profile file: " + path);
    for (const auto& p : ds.profiles) {
        json j;
        j["id"] = p.id;
        if (p.username) j["username"] = *p.username;
        if (p.location) {
            json jl = json::object();
            if (p.location->text) jl["text"] = *p.location->text;
            if (p.location->coords) {
                jl["lat"] = p.location->coords->lat;
                jl["lon"] = p.location->coords->lon;
            }
            j["location"] = jl;
        }
        if (p.gender == Gender::male) j["gender"] = "male";
        if (p.gender == Gender::female) j["gender"] = "female";
        if (p.photo_embedding) j["photo_embedding"] = *p.photo_embedding;
        if (p.freetext) j["freetext"] = *p.freetext;
        if (!p.activities.empty()) j["activities"] = p.activities;
        if (!p.posts.empty()) {
            json jp = json::array();
            for (const auto& post : p.posts) {
                jp.push_back({{"ts", post.ts}, {"text", post.text}});
            }
            j["posts"] = jp;
        }
        if (!p.neighbors.empty()) j["neighbors"] = p.neighbors;
        out << j.dump() << '\n';
    }
}

GroundTruth load_ground_truth(const std::string& path, const Dataset& aux, const Dataset& tgt) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open ground-truth file: " + path);

    GroundTruth gt;
    std::set<std::string> used_aux, used_tgt;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "aux_id,target_id,label") {
                throw DataError("ground truth: expected header 'aux_id,target_id,label'");
            }
            continue;
        }
        std::istringstream ss(line);
        std::string aux_id, tgt_id, label;
        if (!std::getline(ss, aux_id, ',') || !std::getline(ss, tgt_id, ',') ||
            !std::getline(ss, label, ',')) {
            throw DataError("ground truth line " + std::to_string(line_no) + ": malformed row");
        }
        if (!aux.find(aux_id)) {
            throw DataError("ground truth line " + std::to_string(line_no) + ": unknown aux id '" +
                            aux_id + "'");
        }
        if (!tgt.find(tgt_id)) {
            throw DataError("ground truth line " + std::to_string(line_no) +
                            ": unknown target id '" + tgt_id + "'");
        }
        if (label == "1") {
            if (!used_aux.insert(aux_id).second) {
                throw DataError("ground truth: aux id '" + aux_id + "' coupled twice");
            }
            if (!used_tgt.insert(tgt_id).second) {
                throw DataError("ground truth: target id '" + tgt_id + "' coupled twice");
            }
            gt.coupled.emplace_back(aux_id, tgt_id);
        } else if (label == "0") {
            gt.uncoupled.emplace_back(aux_id, tgt_id);
        } else {
            throw DataError("ground truth line " + std::to_string(line_no) + ": label '" + label +
                            "' not in {0,1}");
        }
    }
    return gt;
}

void save_ground_truth(const GroundTruth& gt, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write ground-truth file: " + path);
    out << "aux_id,target_id,label\n";
    for (const auto& [a, t] : gt.coupled) out << a << ',' << t << ",1\n";
    for (const auto& [a, t] : gt.uncoupled) out << a << ',' << t << ",0\n";
}

}  // namespace osn
