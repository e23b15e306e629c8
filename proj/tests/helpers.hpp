#pragma once

// Shared fixtures for the unit and acceptance suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "subs2net/network.hpp"
#include "subs2net/roster.hpp"

namespace testutil {

inline std::string vertex_key(int i) {
    // zero-padded so lexicographic order equals index order
    std::string key = "v";
    if (i < 10) key += '0';
    key += std::to_string(i);
    return key;
}

inline std::vector<subs2net::RosterEntry> quick_roster(
    const std::string& movie_id,
    const std::vector<std::pair<std::string, subs2net::Gender>>& people) {
    std::vector<subs2net::RosterEntry> roster;
    int order = 1;
    for (const auto& [name, gender] : people) {
        subs2net::RosterEntry e;
        e.movie_id = movie_id;
        e.character_name = name;
        e.actor_name = name + " Actor";
        e.gender = gender;
        e.cast_order = order++;
        roster.push_back(std::move(e));
    }
    return roster;
}

// Network with vertices v00..v(n-1) and explicit weighted edges.
inline subs2net::MovieNetwork make_network(
    int n, const std::vector<std::array<int, 3>>& edges,
    const std::vector<subs2net::Gender>& genders = {}) {
    subs2net::MovieNetwork net;
    net.movie_id = "test";
    for (int i = 0; i < n; ++i) {
        subs2net::NodeInfo info;
        info.display_name = vertex_key(i);
        info.gender = i < static_cast<int>(genders.size()) ? genders[static_cast<size_t>(i)]
                                                           : subs2net::Gender::unknown;
        net.nodes[vertex_key(i)] = info;
    }
    for (const auto& e : edges) {
        auto key = subs2net::MovieNetwork::edge_key(vertex_key(e[0]), vertex_key(e[1]));
        auto& edge = net.edges[key];
        edge.weight = e[2];
        edge.timestamps.assign(static_cast<size_t>(e[2]), 0);
    }
    return net;
}

inline oracle::Graph to_oracle(int n, const std::vector<std::array<int, 3>>& edges) {
    oracle::Graph g;
    g.n = n;
    g.edges = edges;
    return g;
}

// Random simple graph; same edge list drives both the library network and the
// oracle graph.
inline std::vector<std::array<int, 3>> random_edges(std::mt19937_64& rng, int n,
                                                    double edge_prob, int max_weight) {
    std::vector<std::array<int, 3>> edges;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> weight(1, max_weight);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (coin(rng) < edge_prob) edges.push_back({u, v, weight(rng)});
        }
    }
    return edges;
}

}  // namespace testutil
