#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "subs2net/network.hpp"

namespace subs2net {

struct Aggregate {
    double mean = 0, median = 0, std_dev = 0, min = 0, max = 0, q1 = 0, q3 = 0;
};

// Population standard deviation; quartiles interpolate linearly between
// closest ranks (position (n-1)*q). Throws EmptyInputError.
Aggregate aggregate(const std::vector<double>& values);

// Sum of incident edge weights. Throws UnknownVertexError.
int total_weight(const MovieNetwork& net, const std::string& key);

// 1 / sum of unweighted shortest-path distances to the vertices reachable
// from v; 0 for vertices that reach nothing.
double closeness(const MovieNetwork& net, const std::string& key);

// Shortest-path betweenness (Brandes). Normalized multiplies by
// 2/((n-1)(n-2)) for n > 2, else 0. The weighted variant measures path
// length as the sum of 1/weight, so heavier edges are shorter.
double betweenness(const MovieNetwork& net, const std::string& key, bool weighted,
                   bool normalized = true);
std::map<std::string, double> betweenness_all(const MovieNetwork& net, bool weighted,
                                              bool normalized = true);

// Neighbor count over |V|-1; 0 for a singleton graph.
double degree_centrality(const MovieNetwork& net, const std::string& key);

// 2T / (k(k-1)) where T counts triangles through the vertex and k its
// degree; 0 when degree < 2. Weights are ignored.
double clustering(const MovieNetwork& net, const std::string& key);

// Damped power iteration with uniform teleport and uniform redistribution of
// dangling (isolated-vertex) mass. Weighted follows edge weight proportions.
// Values sum to 1.
std::map<std::string, double> pagerank(const MovieNetwork& net, double damping = 0.85,
                                       bool weighted = false);

// Number of maximal cliques (Bron-Kerbosch with pivoting); isolated vertices
// count as size-1 cliques.
int64_t count_maximal_cliques(const MovieNetwork& net);

inline constexpr std::array<const char*, 9> kVertexMetricNames = {
    "total_weight",  "degree",     "degree_centrality",   "closeness", "betweenness",
    "weighted_betweenness", "clustering", "pagerank", "weighted_pagerank"};

struct VertexFeatureRow {
    double total_weight = 0, degree = 0, degree_centrality = 0, closeness = 0, betweenness = 0,
           weighted_betweenness = 0, clustering = 0, pagerank = 0, weighted_pagerank = 0;

    double metric(size_t i) const;  // by kVertexMetricNames position
};

std::map<std::string, VertexFeatureRow> compute_vertex_features(const MovieNetwork& net);

struct NetworkFeatures {
    size_t vertex_count = 0;
    size_t edge_count = 0;
    int64_t clique_count = 0;
    bool has_aggregates = false;  // false for the empty graph
    std::array<Aggregate, kVertexMetricNames.size()> aggregates{};
};

NetworkFeatures compute_network_features(const MovieNetwork& net);

// One CSV row per vertex plus a trailing network-level row; fixed header.
std::string features_to_csv(const MovieNetwork& net);

}  // namespace subs2net
