#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "subs2net/error.hpp"
#include "subs2net/graph_metrics.hpp"

using namespace subs2net;
using testutil::make_network;
using testutil::to_oracle;
using testutil::vertex_key;

TEST_CASE("aggregate computes the seven summary stats") {
    Aggregate a = aggregate({4, 1, 3, 2});
    CHECK(a.mean == doctest::Approx(2.5));
    CHECK(a.median == doctest::Approx(2.5));
    CHECK(a.std_dev == doctest::Approx(std::sqrt(1.25)));
    CHECK(a.min == 1);
    CHECK(a.max == 4);
    CHECK(a.q1 == doctest::Approx(1.75));
    CHECK(a.q3 == doctest::Approx(3.25));

    Aggregate single = aggregate({7});
    CHECK(single.mean == 7);
    CHECK(single.q1 == 7);
    CHECK(single.std_dev == 0);

    CHECK_THROWS_AS(aggregate({}), EmptyInputError);
}

TEST_CASE("path graph centralities match the closed forms") {
    // v00 - v01 - v02
    MovieNetwork p3 = make_network(3, {{0, 1, 1}, {1, 2, 1}});
    CHECK(betweenness(p3, vertex_key(1), false) == doctest::Approx(1.0));  // normalized
    CHECK(betweenness(p3, vertex_key(0), false) == doctest::Approx(0.0));
    CHECK(betweenness(p3, vertex_key(1), false, false) == doctest::Approx(1.0));  // raw / 2
    CHECK(closeness(p3, vertex_key(0)) == doctest::Approx(1.0 / 3.0));
    CHECK(closeness(p3, vertex_key(1)) == doctest::Approx(0.5));
    CHECK(degree_centrality(p3, vertex_key(1)) == doctest::Approx(1.0));
    CHECK(clustering(p3, vertex_key(1)) == 0.0);
}

TEST_CASE("star center carries all shortest paths") {
    MovieNetwork s4 = make_network(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
    CHECK(betweenness(s4, vertex_key(0), false) == doctest::Approx(1.0));
    // unnormalized: 3 ordered pairs each direction -> raw 6, halved
    CHECK(betweenness(s4, vertex_key(0), false, false) == doctest::Approx(3.0));
}

TEST_CASE("heavy edges shorten weighted paths") {
    // direct a-c costs 1; a-b-c costs 1/3 + 1/3
    MovieNetwork tri = make_network(3, {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}});
    CHECK(betweenness(tri, vertex_key(1), true) == doctest::Approx(1.0));
    CHECK(betweenness(tri, vertex_key(1), false) == doctest::Approx(0.0));
}

TEST_CASE("disconnected and trivial graphs") {
    MovieNetwork lonely = make_network(3, {{0, 1, 1}});  // v02 isolated
    CHECK(closeness(lonely, vertex_key(2)) == 0.0);
    CHECK(closeness(lonely, vertex_key(0)) == doctest::Approx(1.0));
    CHECK(betweenness(lonely, vertex_key(2), false) == 0.0);
    MovieNetwork single = make_network(1, {});
    CHECK(degree_centrality(single, vertex_key(0)) == 0.0);
    CHECK_THROWS_AS(closeness(lonely, "nope"), UnknownVertexError);
}

TEST_CASE("total_weight sums incident weights") {
    MovieNetwork net = make_network(3, {{0, 1, 4}, {0, 2, 2}});
    CHECK(total_weight(net, vertex_key(0)) == 6);
    CHECK(total_weight(net, vertex_key(1)) == 4);
    CHECK_THROWS_AS(total_weight(net, "nope"), UnknownVertexError);
}

TEST_CASE("pagerank is a distribution and uniform on symmetric graphs") {
    MovieNetwork k3 = make_network(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
    auto pr = pagerank(k3);
    double sum = 0;
    for (const auto& [_, v] : pr) {
        CHECK(v == doctest::Approx(1.0 / 3.0));
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0));

    // no edges: everything is dangling, stays uniform
    MovieNetwork bare = make_network(2, {});
    auto flat = pagerank(bare);
    CHECK(flat.at(vertex_key(0)) == doctest::Approx(0.5));
}

TEST_CASE("weighted pagerank shifts mass along heavy edges") {
    MovieNetwork net = make_network(3, {{0, 1, 9}, {1, 2, 1}});
    auto pr = pagerank(net, 0.85, true);
    CHECK(pr.at(vertex_key(0)) > pr.at(vertex_key(2)));
}

TEST_CASE("maximal clique counts") {
    CHECK(count_maximal_cliques(make_network(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}})) == 1);
    CHECK(count_maximal_cliques(make_network(3, {{0, 1, 1}, {1, 2, 1}})) == 2);
    CHECK(count_maximal_cliques(make_network(3, {})) == 3);  // three singletons
    CHECK(count_maximal_cliques(MovieNetwork{}) == 0);
}

TEST_CASE("network features aggregate the vertex table") {
    MovieNetwork p3 = make_network(3, {{0, 1, 2}, {1, 2, 1}});
    NetworkFeatures f = compute_network_features(p3);
    CHECK(f.vertex_count == 3);
    CHECK(f.edge_count == 2);
    CHECK(f.clique_count == 2);
    REQUIRE(f.has_aggregates);
    // total_weight aggregate: values 2, 3, 1
    CHECK(f.aggregates[0].mean == doctest::Approx(2.0));
    CHECK(f.aggregates[0].max == doctest::Approx(3.0));

    NetworkFeatures empty = compute_network_features(MovieNetwork{});
    CHECK_FALSE(empty.has_aggregates);
    CHECK(empty.vertex_count == 0);
}

TEST_CASE("features CSV has one row per vertex plus a network row") {
    MovieNetwork p3 = make_network(3, {{0, 1, 1}, {1, 2, 1}});
    std::string csv = features_to_csv(p3);
    size_t rows = 0;
    for (char c : csv) rows += c == '\n';
    CHECK(rows == 1 + 3 + 1);  // header, vertices, network summary
}

TEST_CASE("metrics agree with brute-force oracles on random graphs") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> size(1, 8);
    std::uniform_real_distribution<double> prob(0.1, 0.9);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = size(rng);
        auto edges = testutil::random_edges(rng, n, prob(rng), 10);
        MovieNetwork net = make_network(n, edges);
        oracle::Graph g = to_oracle(n, edges);

        auto bw = betweenness_all(net, false);
        auto bww = betweenness_all(net, true);
        auto bw_raw = betweenness_all(net, false, false);
        auto pr = pagerank(net);
        auto prw = pagerank(net, 0.85, true);

        auto obw = oracle::betweenness(g, false, true);
        auto obww = oracle::betweenness(g, true, true);
        auto obw_raw = oracle::betweenness(g, false, false);
        auto ocl = oracle::closeness(g);
        auto odc = oracle::degree_centrality(g);
        auto occ = oracle::clustering(g);
        auto opr = oracle::pagerank(g, 0.85, false);
        auto oprw = oracle::pagerank(g, 0.85, true);

        for (int v = 0; v < n; ++v) {
            const std::string key = vertex_key(v);
            CHECK(bw.at(key) == doctest::Approx(obw[v]).epsilon(1e-9));
            CHECK(bww.at(key) == doctest::Approx(obww[v]).epsilon(1e-9));
            CHECK(bw_raw.at(key) == doctest::Approx(obw_raw[v]).epsilon(1e-9));
            CHECK(closeness(net, key) == doctest::Approx(ocl[v]).epsilon(1e-9));
            CHECK(degree_centrality(net, key) == doctest::Approx(odc[v]).epsilon(1e-9));
            CHECK(clustering(net, key) == doctest::Approx(occ[v]).epsilon(1e-9));
            CHECK(pr.at(key) == doctest::Approx(opr[v]).epsilon(1e-9));
            CHECK(prw.at(key) == doctest::Approx(oprw[v]).epsilon(1e-9));
        }
        CHECK(count_maximal_cliques(net) == oracle::maximal_clique_count(g));
    }
}
