#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subs2net/mentions.hpp"
#include "subs2net/roster.hpp"

namespace subs2net {

struct NodeInfo {
    std::string display_name;
    Gender gender = Gender::unknown;
    std::string actor_name;
};

struct EdgeData {
    int weight = 0;
    std::vector<int64_t> timestamps;  // sorted, one entry per counted co-mention
};

using EdgeKey = std::pair<std::string, std::string>;  // first < second

struct MovieNetwork {
    std::string movie_id;
    std::map<std::string, NodeInfo> nodes;  // key = normalized character name
    std::map<EdgeKey, EdgeData> edges;

    static EdgeKey edge_key(std::string_view a, std::string_view b);
    bool has_edge(std::string_view a, std::string_view b) const;
    int edge_weight(std::string_view a, std::string_view b) const;  // 0 when absent
};

// Builds the undirected co-mention graph: every roster character becomes a
// node (never-mentioned ones stay isolated); scanning mentions in time
// order, each mention links once to every distinct other character mentioned
// less than t_window_s seconds before it, incrementing the edge weight and
// appending the later mention's timestamp. Edges below w_min are dropped
// afterwards.
MovieNetwork build_network(std::vector<Mention> mentions, const std::vector<RosterEntry>& roster,
                           int t_window_s, int w_min, const std::string& movie_id);

enum class ExportFormat { gexf, json, csv };
ExportFormat export_format_from_name(std::string_view name);  // UnsupportedFormatError

// Deterministic serializations: nodes lexicographic, edges by sorted key.
// gexf: GEXF 1.2 with node attributes gender/actor and edge weights.
// json: full fidelity including per-edge timestamps.
// csv:  "source,target,weight" edge list.
std::string export_network(const MovieNetwork& net, ExportFormat format);

MovieNetwork network_from_json(std::string_view json_text);

// Reads the GEXF this toolkit writes (and similarly shaped files): node ids,
// labels, gender/actor attributes, edge weights. Unknown attributes are
// ignored; missing genders come back unknown.
MovieNetwork import_gexf(std::string_view gexf_text);

// Restricts every edge to timestamps <= until_ms, recomputing weights and
// dropping emptied edges. Nodes are kept; the w_min floor is not re-applied.
MovieNetwork snapshot(const MovieNetwork& net, int64_t until_ms);

}  // namespace subs2net
