#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subs2net/gender.hpp"
#include "subs2net/network.hpp"

namespace subs2net {

enum class AlignMode { exact, fuzzy };

struct CoverageReport {
    std::string id_a;
    std::string id_b;
    int64_t common_nodes = 0;
    int64_t matched_edges = 0;  // shared edges on the induced common subgraphs
    int64_t edges_a = 0;        // induced edge counts
    int64_t edges_b = 0;
    // matched / induced edges of the *other* network; empty when there are no
    // common nodes or the denominator is zero
    std::optional<double> coverage_ab;  // how much of b's edges a covers
    std::optional<double> coverage_ba;
};

std::string coverage_to_json(const CoverageReport& report);

// One-to-one node alignment across networks: identical normalized keys
// first; in fuzzy mode remaining nodes pair greedily by similarity score
// (descending, ties by key) subject to the threshold.
std::map<std::string, std::string> align_names(const std::vector<std::string>& a_keys,
                                               const std::vector<std::string>& b_keys,
                                               AlignMode mode, int threshold = 85);

// Directional edge coverage over the subgraphs induced by the aligned
// common nodes.
CoverageReport edge_coverage(const MovieNetwork& a, const MovieNetwork& b,
                             AlignMode mode = AlignMode::exact, int threshold = 85);

// How many of the network's k most central characters appear within the
// first k entries of a reference name ranking. Throws EmptyReferenceError
// and KTooLargeError (k must fit the reference list).
int top_k_overlap(const MovieNetwork& net, const std::vector<std::string>& reference_order,
                  int k, RankMetric metric = RankMetric::degree_centrality,
                  AlignMode mode = AlignMode::exact, int threshold = 85);

}  // namespace subs2net
