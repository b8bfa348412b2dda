#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "osn/datamodel.hpp"

namespace osn {

// Undirected graph, no self-loops.
struct SocialGraph {
    std::unordered_map<std::string, std::set<std::string>> adjacency;

    void add_node(const std::string& id) { adjacency.try_emplace(id); }
    void add_edge(const std::string& u, const std::string& v);
    bool has_node(const std::string& id) const { return adjacency.count(id) > 0; }
    std::size_t degree(const std::string& id) const;
    std::size_t num_nodes() const { return adjacency.size(); }
    std::size_t num_edges() const;

    // canonical (u < v) edge list, sorted; basis for deterministic sampling
    std::vector<std::pair<std::string, std::string>> sorted_edges() const;
};

// Neighbor-degree histogram: c_k counts neighbors whose degree d satisfies
// k*b < d <= (k+1)*b; degrees beyond n*b clamp into the last bin.
struct GraphFeatureVector {
    std::vector<std::uint32_t> counts;
    int bin_size = 15;

    bool all_zero() const {
        for (auto c : counts) {
            if (c != 0) return false;
        }
        return true;
    }
};

GraphFeatureVector degree_feature_vector(const SocialGraph& g, const std::string& node,
                                         int length = 70, int bin_size = 15);

// Cosine of the count vectors; nullopt when either is all-zero.
std::optional<double> sim_graph(const GraphFeatureVector& a, const GraphFeatureVector& b);

// Copies every vertex into both views; each edge lands in both with
// probability edge_overlap, otherwise in exactly one side (fair coin).
std::pair<SocialGraph, SocialGraph> split_graph(const SocialGraph& g, double edge_overlap,
                                                std::uint64_t seed);

// Preferential attachment: node k attaches to attach_m distinct earlier nodes,
// degree-weighted. Node ids are "0".."num_nodes-1".
SocialGraph generate_synthetic_graph(std::size_t num_nodes, std::size_t attach_m,
                                     std::uint64_t seed);

// Edge-list file: one `u v` pair per line, whitespace-separated, undirected;
// duplicates ignored.
SocialGraph load_edge_list(const std::string& path);
void save_edge_list(const SocialGraph& g, const std::string& path);

}  // namespace osn
