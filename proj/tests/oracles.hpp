#pragma once

// Brute-force reference implementations used only by the test suite. Each one
// recomputes a library result along a deliberately different path (full DP
// matrices, exhaustive path/subset enumeration, dense iteration) so the two
// sides can be compared without sharing code.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace oracle {

// --- text -------------------------------------------------------------------

std::string normalize(std::string_view s);
int levenshtein(std::string_view a, std::string_view b);  // full (n+1)x(m+1) matrix
int ratio(std::string_view a, std::string_view b);
int similarity(std::string_view a, std::string_view b);

// --- graphs -------------------------------------------------------------------

struct Graph {
    int n = 0;
    std::vector<std::array<int, 3>> edges;  // {u, v, weight}, u != v, deduped

    bool connected(int a, int b) const;
    int weight(int a, int b) const;  // 0 when not adjacent
};

std::vector<double> betweenness(const Graph& g, bool weighted, bool normalized);
std::vector<double> closeness(const Graph& g);
std::vector<double> degree_centrality(const Graph& g);
std::vector<double> clustering(const Graph& g);
std::vector<double> pagerank(const Graph& g, double damping, bool weighted);
std::int64_t maximal_clique_count(const Graph& g);  // subset enumeration

// genders: 0 = female, 1 = male, 2 = unknown, indexed by vertex.
struct TriangleCounts {
    std::array<std::int64_t, 4> by_women{};  // triangles with N women
    std::int64_t unknown_excluded = 0;
};
TriangleCounts triangle_census(const Graph& g, const std::vector<int>& genders);

// --- statistics ---------------------------------------------------------------

// U statistic by direct pairwise comparison (wins + half-ties).
double mwu_u(const std::vector<double>& a, const std::vector<double>& b);
// Two-sided exact permutation p-value, same pairwise U underneath.
double mwu_exact_p(const std::vector<double>& a, const std::vector<double>& b);

// Trapezoidal ROC integration; labels are 0/1. Returns -1 when degenerate.
double roc_auc(const std::vector<int>& labels, const std::vector<double>& scores);

// --- mention pair counting ------------------------------------------------------

struct MentionEvent {
    std::string character;
    std::int64_t t_ms = 0;
};

struct PairCount {
    std::string a, b;  // a < b
    int weight = 0;
    std::vector<std::int64_t> timestamps;
};

// O(n^2) windowed co-mention counter over an already-ordered mention stream.
std::vector<PairCount> count_pairs(const std::vector<MentionEvent>& stream,
                                   std::int64_t window_ms);

}  // namespace oracle
