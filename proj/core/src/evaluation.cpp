#include "subs2net/evaluation.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "subs2net/error.hpp"
#include "subs2net/similarity.hpp"
#include "subs2net/text.hpp"

namespace subs2net {

std::map<std::string, std::string> align_names(const std::vector<std::string>& a_keys,
                                               const std::vector<std::string>& b_keys,
                                               AlignMode mode, int threshold) {
    std::map<std::string, std::string> mapping;
    std::set<std::string> b_taken;
    std::set<std::string> b_pool(b_keys.begin(), b_keys.end());
    std::vector<std::string> a_rest;
    for (const auto& a : a_keys) {
        const std::string na = normalize_name(a);
        if (b_pool.count(na) && !b_taken.count(na)) {
            mapping[a] = na;
            b_taken.insert(na);
        } else {
            a_rest.push_back(a);
        }
    }
    if (mode == AlignMode::exact) return mapping;

    // score-descending greedy one-to-one matching for the leftovers
    std::vector<std::tuple<int, std::string, std::string>> candidates;
    for (const auto& a : a_rest) {
        for (const auto& b : b_keys) {
            if (b_taken.count(b)) continue;
            const int score = similarity(a, b);
            if (score >= threshold) candidates.emplace_back(score, a, b);
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
        if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
        if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) < std::get<1>(y);
        return std::get<2>(x) < std::get<2>(y);
    });
    std::set<std::string> a_taken;
    for (const auto& [score, a, b] : candidates) {
        if (a_taken.count(a) || b_taken.count(b)) continue;
        mapping[a] = b;
        a_taken.insert(a);
        b_taken.insert(b);
    }
    return mapping;
}

CoverageReport edge_coverage(const MovieNetwork& a, const MovieNetwork& b, AlignMode mode,
                             int threshold) {
    CoverageReport report;
    report.id_a = a.movie_id;
    report.id_b = b.movie_id;

    std::vector<std::string> a_keys, b_keys;
    for (const auto& [key, info] : a.nodes) a_keys.push_back(key);
    for (const auto& [key, info] : b.nodes) b_keys.push_back(key);
    const auto mapping = align_names(a_keys, b_keys, mode, threshold);
    report.common_nodes = static_cast<int64_t>(mapping.size());
    if (mapping.empty()) return report;  // coverages stay undefined

    // induced edge sets over the aligned nodes, expressed in b's keys
    std::set<std::pair<std::string, std::string>> a_edges, b_edges;
    for (const auto& [key, edge] : a.edges) {
        const auto u = mapping.find(key.first);
        const auto v = mapping.find(key.second);
        if (u == mapping.end() || v == mapping.end()) continue;
        a_edges.insert(MovieNetwork::edge_key(u->second, v->second));
    }
    std::set<std::string> mapped_b;
    for (const auto& [key, value] : mapping) mapped_b.insert(value);
    for (const auto& [key, edge] : b.edges) {
        if (mapped_b.count(key.first) && mapped_b.count(key.second)) b_edges.insert(key);
    }

    report.edges_a = static_cast<int64_t>(a_edges.size());
    report.edges_b = static_cast<int64_t>(b_edges.size());
    for (const auto& e : a_edges) {
        if (b_edges.count(e)) ++report.matched_edges;
    }
    if (report.edges_b > 0) {
        report.coverage_ab =
            static_cast<double>(report.matched_edges) / static_cast<double>(report.edges_b);
    }
    if (report.edges_a > 0) {
        report.coverage_ba =
            static_cast<double>(report.matched_edges) / static_cast<double>(report.edges_a);
    }
    return report;
}

std::string coverage_to_json(const CoverageReport& report) {
    nlohmann::ordered_json j;
    j["a"] = report.id_a;
    j["b"] = report.id_b;
    j["common_nodes"] = report.common_nodes;
    j["matched_edges"] = report.matched_edges;
    j["edges_a"] = report.edges_a;
    j["edges_b"] = report.edges_b;
    if (report.coverage_ab) j["coverage_ab"] = *report.coverage_ab;
    else j["coverage_ab"] = nullptr;
    if (report.coverage_ba) j["coverage_ba"] = *report.coverage_ba;
    else j["coverage_ba"] = nullptr;
    return j.dump(2) + "\n";
}

int top_k_overlap(const MovieNetwork& net, const std::vector<std::string>& reference_order,
                  int k, RankMetric metric, AlignMode mode, int threshold) {
    if (reference_order.empty()) throw EmptyReferenceError("empty reference ranking");
    if (k < 1 || static_cast<size_t>(k) > reference_order.size()) {
        throw KTooLargeError("k=" + std::to_string(k) + " out of range for reference of " +
                             std::to_string(reference_order.size()));
    }
    const std::vector<std::string> ranked = top_k(net, metric, k);
    std::vector<std::string> reference;
    reference.reserve(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        reference.push_back(normalize_name(reference_order[static_cast<size_t>(i)]));
    }
    const auto mapping = align_names(ranked, reference, mode, threshold);
    return static_cast<int>(mapping.size());
}

}  // namespace subs2net
