#include "osn/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "osn/rng.hpp"

namespace osn {

void SocialGraph::add_edge(const std::string& u, const std::string& v) {
    if (u == v) return;  // no self-loops
    adjacency[u].insert(v);
    adjacency[v].insert(u);
}

std::size_t SocialGraph::degree(const std::string& id) const {
    auto it = adjacency.find(id);
    return it == adjacency.end() ? 0 : it->second.size();
}

std::size_t SocialGraph::num_edges() const {
    std::size_t twice = 0;
    for (const auto& [_, nbrs] : adjacency) twice += nbrs.size();
    return twice / 2;
}

std::vector<std::pair<std::string, std::string>> SocialGraph::sorted_edges() const {
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& [u, nbrs] : adjacency) {
        for (const auto& v : nbrs) {
            if (u < v) edges.emplace_back(u, v);
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

GraphFeatureVector degree_feature_vector(const SocialGraph& g, const std::string& node,
                                         int length, int bin_size) {
    auto it = g.adjacency.find(node);
    if (it == g.adjacency.end()) throw DataError("degree_feature_vector: unknown node " + node);

    GraphFeatureVector f;
    f.bin_size = bin_size;
    f.counts.assign(length, 0);
    for (const auto& nbr : it->second) {
        const auto deg = static_cast<long>(g.degree(nbr));
        // k*b < deg <= (k+1)*b  =>  k = ceil(deg/b) - 1; degree 0 cannot occur
        long k = (deg + bin_size - 1) / bin_size - 1;
        if (k >= length) k = length - 1;  // clamp into the last bin
        ++f.counts[k];
    }
    return f;
}

std::optional<double> sim_graph(const GraphFeatureVector& a, const GraphFeatureVector& b) {
    if (a.all_zero() || b.all_zero()) return std::nullopt;
    double dot = 0.0, na = 0.0, nb = 0.0;
    const std::size_t n = std::min(a.counts.size(), b.counts.size());
    for (std::size_t i = 0; i < n; ++i) {
        dot += static_cast<double>(a.counts[i]) * b.counts[i];
    }
    for (auto c : a.counts) na += static_cast<double>(c) * c;
    for (auto c : b.counts) nb += static_cast<double>(c) * c;
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

std::pair<SocialGraph, SocialGraph> split_graph(const SocialGraph& g, double edge_overlap,
                                                std::uint64_t seed) {
    SocialGraph aux, tgt;
    for (const auto& [u, _] : g.adjacency) {
        aux.add_node(u);
        tgt.add_node(u);
    }
    Rng rng(seed);
    for (const auto& [u, v] : g.sorted_edges()) {
        const double r = rng.uniform();
        if (r < edge_overlap) {
            aux.add_edge(u, v);
            tgt.add_edge(u, v);
        } else if (r < edge_overlap + (1.0 - edge_overlap) / 2.0) {
            aux.add_edge(u, v);
        } else {
            tgt.add_edge(u, v);
        }
    }
    return {std::move(aux), std::move(tgt)};
}

SocialGraph generate_synthetic_graph(std::size_t num_nodes, std::size_t attach_m,
                                     std::uint64_t seed) {
    if (attach_m < 1 || num_nodes <= attach_m) {
        throw DataError("generate_synthetic_graph: need num_nodes > attach_m >= 1");
    }
    SocialGraph g;
    Rng rng(seed);
    std::vector<std::size_t> endpoints;  // node repeated once per incident edge
    for (std::size_t node = 0; node < num_nodes; ++node) {
        g.add_node(std::to_string(node));
        if (node == 0) continue;
        const std::size_t targets = std::min(attach_m, node);
        std::set<std::size_t> chosen;
        while (chosen.size() < targets) {
            std::size_t pick;
            if (endpoints.empty()) {
                pick = rng.below(node);
            } else {
                // degree-weighted: sample an edge endpoint
                pick = endpoints[rng.below(endpoints.size())];
            }
            chosen.insert(pick);
        }
        for (const auto t : chosen) {
            g.add_edge(std::to_string(node), std::to_string(t));
            endpoints.push_back(node);
            endpoints.push_back(t);
        }
    }
    return g;
}

SocialGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge list: " + path);
    SocialGraph g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string u, v;
        if (!(ss >> u >> v)) {
            throw DataError("edge list line " + std::to_string(line_no) + ": malformed row");
        }
        g.add_edge(u, v);
    }
    return g;
}

void save_edge_list(const SocialGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write edge list: " + path);
    for (const auto& [u, v] : g.sorted_edges()) out << u << ' ' << v << '\n';
}

}  // namespace osn
