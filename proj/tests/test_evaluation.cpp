#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "subs2net/error.hpp"
#include "subs2net/evaluation.hpp"

using namespace subs2net;
using testutil::make_network;
using testutil::vertex_key;

namespace {

// Consistently rename a network's node keys (and its edges) by table lookup.
MovieNetwork relabel(const MovieNetwork& net,
                     const std::map<std::string, std::string>& table) {
    MovieNetwork out;
    out.movie_id = net.movie_id;
    for (const auto& [key, info] : net.nodes) out.nodes[table.at(key)] = info;
    for (const auto& [key, edge] : net.edges) {
        out.edges[MovieNetwork::edge_key(table.at(key.first), table.at(key.second))] = edge;
    }
    return out;
}

}  // namespace

TEST_CASE("align_names pairs identical keys first") {
    const auto mapping = align_names({"anna", "boris"}, {"boris", "clara"}, AlignMode::exact);
    REQUIRE(mapping.size() == 1);
    CHECK(mapping.at("boris") == "boris");

    // exact mode never falls back to fuzzy pairing
    CHECK(align_names({"bruce wayne"}, {"wayne bruce"}, AlignMode::exact).empty());
}

TEST_CASE("fuzzy alignment is greedy, one-to-one, score-descending") {
    const auto mapping =
        align_names({"wayne"}, {"bruce wayne", "wayne bruce"}, AlignMode::fuzzy);
    REQUIRE(mapping.size() == 1);
    CHECK(mapping.at("wayne") == "bruce wayne");  // equal scores; smaller key wins

    // a key already consumed by the exact phase is off the table
    const auto taken = align_names({"anna", "hanna"}, {"anna"}, AlignMode::fuzzy);
    REQUIRE(taken.size() == 1);
    CHECK(taken.at("anna") == "anna");

    // scores below the threshold never match
    CHECK(align_names({"don corleone"}, {"michael rizzi"}, AlignMode::fuzzy).empty());
    CHECK(align_names({"wayne"}, {"bruce wayne"}, AlignMode::fuzzy, 95).empty());
}

TEST_CASE("edge coverage of a network against itself is total") {
    MovieNetwork net = make_network(4, {{0, 1, 2}, {1, 2, 1}, {2, 3, 5}});
    const CoverageReport r = edge_coverage(net, net);
    CHECK(r.common_nodes == 4);
    CHECK(r.matched_edges == 3);
    CHECK(r.edges_a == 3);
    CHECK(r.edges_b == 3);
    REQUIRE(r.coverage_ab.has_value());
    REQUIRE(r.coverage_ba.has_value());
    CHECK(*r.coverage_ab == doctest::Approx(1.0));
    CHECK(*r.coverage_ba == doctest::Approx(1.0));
}

TEST_CASE("edge coverage counts shared induced edges") {
    // same three nodes; A has a-b, b-c while B has a-b, a-c
    MovieNetwork a = make_network(3, {{0, 1, 1}, {1, 2, 1}});
    MovieNetwork b = make_network(3, {{0, 1, 1}, {0, 2, 1}});
    a.movie_id = "left";
    b.movie_id = "right";
    const CoverageReport r = edge_coverage(a, b);
    CHECK(r.id_a == "left");
    CHECK(r.id_b == "right");
    CHECK(r.common_nodes == 3);
    CHECK(r.matched_edges == 1);
    CHECK(r.edges_a == 2);
    CHECK(r.edges_b == 2);
    CHECK(*r.coverage_ab == doctest::Approx(0.5));
    CHECK(*r.coverage_ba == doctest::Approx(0.5));
}

TEST_CASE("edge coverage with no common nodes stays undefined") {
    MovieNetwork a = make_network(2, {{0, 1, 1}});
    MovieNetwork b = relabel(a, {{vertex_key(0), "someone else"}, {vertex_key(1), "entirely"}});
    const CoverageReport r = edge_coverage(a, b);
    CHECK(r.common_nodes == 0);
    CHECK_FALSE(r.coverage_ab.has_value());
    CHECK_FALSE(r.coverage_ba.has_value());

    const std::string json = coverage_to_json(r);
    CHECK(json.find("\"coverage_ab\": null") != std::string::npos);
    CHECK(json.find("\"common_nodes\": 0") != std::string::npos);
}

TEST_CASE("renaming both networks consistently preserves coverage") {
    MovieNetwork a = make_network(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
    MovieNetwork b = make_network(4, {{0, 1, 1}, {0, 2, 1}, {2, 3, 1}});
    const CoverageReport before = edge_coverage(a, b);

    const std::map<std::string, std::string> table = {
        {vertex_key(0), "karl arnold"},
        {vertex_key(1), "rosa brandt"},
        {vertex_key(2), "clara zimmer"},
        {vertex_key(3), "otto keller"},
    };
    const CoverageReport after = edge_coverage(relabel(a, table), relabel(b, table));
    CHECK(after.common_nodes == before.common_nodes);
    CHECK(after.matched_edges == before.matched_edges);
    CHECK(after.edges_a == before.edges_a);
    CHECK(after.edges_b == before.edges_b);
    CHECK(*after.coverage_ab == *before.coverage_ab);
    CHECK(*after.coverage_ba == *before.coverage_ba);
}

TEST_CASE("fuzzy coverage bridges spelling variants") {
    MovieNetwork a = make_network(2, {{0, 1, 1}});
    MovieNetwork b = relabel(a, {{vertex_key(0), vertex_key(0)},
                                 {vertex_key(1), "bruce wayne"}});
    MovieNetwork a2 = relabel(a, {{vertex_key(0), vertex_key(0)},
                                  {vertex_key(1), "wayne bruce"}});
    CHECK(edge_coverage(a2, b, AlignMode::exact).common_nodes == 1);
    const CoverageReport fuzzy = edge_coverage(a2, b, AlignMode::fuzzy);
    CHECK(fuzzy.common_nodes == 2);
    CHECK(fuzzy.matched_edges == 1);
    CHECK(*fuzzy.coverage_ab == doctest::Approx(1.0));
}

TEST_CASE("top_k_overlap scores a ranking against a reference list") {
    // path v00 - v01 - v02: v01 is the clear center
    MovieNetwork net = make_network(3, {{0, 1, 1}, {1, 2, 1}});

    CHECK(top_k_overlap(net, {"v01", "v00", "v02"}, 2) == 2);
    CHECK(top_k_overlap(net, {"v02", "v01", "v00"}, 2) == 1);  // ranked = v01, v00
    CHECK(top_k_overlap(net, {"V01 ", "v00"}, 1) == 1);        // reference is normalized

    CHECK_THROWS_AS(top_k_overlap(net, {}, 1), EmptyReferenceError);
    CHECK_THROWS_AS(top_k_overlap(net, {"v00"}, 2), KTooLargeError);
    CHECK_THROWS_AS(top_k_overlap(net, {"v00"}, 0), KTooLargeError);
}

TEST_CASE("top_k_overlap can align fuzzily") {
    MovieNetwork net = make_network(2, {{0, 1, 1}});
    MovieNetwork named = relabel(net, {{vertex_key(0), "bruce wayne"},
                                       {vertex_key(1), "james gordon"}});
    const std::vector<std::string> reference = {"Wayne Bruce", "James Gordon"};
    CHECK(top_k_overlap(named, reference, 2, RankMetric::degree_centrality,
                        AlignMode::exact) == 1);  // only the exact spelling survives
    CHECK(top_k_overlap(named, reference, 2, RankMetric::degree_centrality,
                        AlignMode::fuzzy) == 2);
}
