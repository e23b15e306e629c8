#pragma once

// Internal dense-index adjacency built from a MovieNetwork. Shared by the
// metric and gender analysis translation units; not part of the public API.

#include <string>
#include <unordered_map>
#include <vector>

#include "subs2net/network.hpp"

namespace subs2net::detail {

struct GraphView {
    std::vector<std::string> keys;  // sorted node keys; index = vertex id
    std::unordered_map<std::string, int> index;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, weight), neighbor ascending
    std::vector<Gender> genders;

    explicit GraphView(const MovieNetwork& net) {
        keys.reserve(net.nodes.size());
        for (const auto& [key, info] : net.nodes) {
            index.emplace(key, static_cast<int>(keys.size()));
            keys.push_back(key);
            genders.push_back(info.gender);
        }
        adj.resize(keys.size());
        for (const auto& [key, edge] : net.edges) {
            auto a = index.find(key.first);
            auto b = index.find(key.second);
            if (a == index.end() || b == index.end()) continue;
            adj[static_cast<size_t>(a->second)].push_back({b->second, edge.weight});
            adj[static_cast<size_t>(b->second)].push_back({a->second, edge.weight});
        }
        for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    }

    int n() const { return static_cast<int>(keys.size()); }
    int degree(int v) const { return static_cast<int>(adj[static_cast<size_t>(v)].size()); }

    bool connected(int a, int b) const {
        const auto& nbrs = adj[static_cast<size_t>(a)];
        for (const auto& [w, _] : nbrs) {
            if (w == b) return true;
        }
        return false;
    }
};

}  // namespace subs2net::detail
