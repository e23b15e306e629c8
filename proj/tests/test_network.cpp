#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "subs2net/error.hpp"
#include "subs2net/network.hpp"

using namespace subs2net;
using testutil::quick_roster;

namespace {

Mention at(const char* key, int64_t ms) {
    Mention m;
    m.character_key = key;
    m.time_ms = ms;
    return m;
}

}  // namespace

TEST_CASE("build_network links mentions inside the strict window") {
    auto roster = quick_roster("m", {{"Ana", Gender::female}, {"Ben", Gender::male},
                                     {"Cleo", Gender::female}});
    std::vector<Mention> mentions = {
        at("ana", 10000), at("ben", 40000),   // 30 s apart: linked
        at("cleo", 100000),                   // 60 s after ben: exactly on the boundary
    };
    MovieNetwork net = build_network(mentions, roster, 60, 1, "m");
    CHECK(net.nodes.size() == 3);
    CHECK(net.edge_weight("ana", "ben") == 1);
    CHECK(net.edge_weight("ben", "cleo") == 0);  // t - t' == window is outside
    CHECK(net.edges.at(MovieNetwork::edge_key("ana", "ben")).timestamps ==
          std::vector<int64_t>{40000});
}

TEST_CASE("a mention links each earlier character at most once") {
    auto roster = quick_roster("m", {{"Ana", Gender::female}, {"Ben", Gender::male}});
    std::vector<Mention> mentions = {
        at("ana", 1000), at("ana", 2000), at("ben", 3000),
    };
    MovieNetwork net = build_network(mentions, roster, 60, 1, "m");
    CHECK(net.edge_weight("ana", "ben") == 1);  // ben counts ana once, not twice
}

TEST_CASE("same-timestamp mentions in one cue link") {
    auto roster = quick_roster("m", {{"Ana", Gender::female}, {"Ben", Gender::male}});
    std::vector<Mention> mentions = {at("ana", 5000), at("ben", 5000)};
    MovieNetwork net = build_network(mentions, roster, 60, 1, "m");
    CHECK(net.edge_weight("ana", "ben") == 1);
    CHECK(net.edges.begin()->second.timestamps == std::vector<int64_t>{5000});
}

TEST_CASE("w_min drops light edges after counting") {
    auto roster = quick_roster("m", {{"Ana", Gender::female}, {"Ben", Gender::male},
                                     {"Cleo", Gender::female}});
    std::vector<Mention> mentions = {
        at("ana", 1000),  at("ben", 2000),    // ana-ben 1st
        at("ana", 3000),                      // ana-ben 2nd (plus ben-ana once only)
        at("cleo", 4000),                     // cleo-ana, cleo-ben single hits
    };
    MovieNetwork strict = build_network(mentions, roster, 60, 2, "m");
    CHECK(strict.edge_weight("ana", "ben") == 2);
    CHECK(strict.edge_weight("ana", "cleo") == 0);
    CHECK(strict.edge_weight("ben", "cleo") == 0);
    CHECK(strict.nodes.size() == 3);  // nodes survive the filter
}

TEST_CASE("every roster character becomes a node") {
    auto roster = quick_roster("m", {{"Ana", Gender::female}, {"Ghost", Gender::unknown}});
    MovieNetwork net = build_network({}, roster, 60, 1, "m");
    CHECK(net.nodes.size() == 2);
    CHECK(net.nodes.count("ghost") == 1);
    CHECK(net.edges.empty());
}

TEST_CASE("build_network matches the quadratic pair-counting oracle") {
    std::mt19937_64 rng(99);
    const char* names[] = {"ana", "ben", "cleo", "dan", "elsa", "finn"};
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> count(0, 60);
        std::uniform_int_distribution<int> step(0, 40000);
        std::uniform_int_distribution<size_t> who(0, 5);

        std::vector<Mention> mentions;
        std::vector<oracle::MentionEvent> events;
        int64_t t = 0;
        for (int i = count(rng); i > 0; --i) {
            t += step(rng);
            const char* name = names[who(rng)];
            mentions.push_back(at(name, t));
            events.push_back({name, t});
        }

        auto roster = quick_roster("m", {{"Ana", Gender::female}, {"Ben", Gender::male},
                                         {"Cleo", Gender::female}, {"Dan", Gender::male},
                                         {"Elsa", Gender::female}, {"Finn", Gender::male}});
        MovieNetwork net = build_network(mentions, roster, 60, 1, "m");
        std::vector<oracle::PairCount> expected = oracle::count_pairs(events, 60000);

        REQUIRE(net.edges.size() == expected.size());
        size_t i = 0;
        for (const auto& [key, edge] : net.edges) {
            CHECK(key.first == expected[i].a);
            CHECK(key.second == expected[i].b);
            CHECK(edge.weight == expected[i].weight);
            CHECK(edge.timestamps == expected[i].timestamps);
            ++i;
        }
    }
}

TEST_CASE("csv export is the plain edge list") {
    auto roster = quick_roster("m", {{"Ana", Gender::female}, {"Ben", Gender::male}});
    MovieNetwork net = build_network({at("ana", 1000), at("ben", 2000)}, roster, 60, 1, "m");
    CHECK(export_network(net, ExportFormat::csv) ==
          "source,target,weight\nana,ben,1\n");
}

TEST_CASE("json export round-trips the full network") {
    auto roster = quick_roster("m", {{"Ana Ray", Gender::female}, {"Ben", Gender::male},
                                     {"Ghost", Gender::unknown}});
    MovieNetwork net = build_network({at("ana ray", 1000), at("ben", 2000), at("ana ray", 3000)},
                                     roster, 60, 1, "m");
    MovieNetwork back = network_from_json(export_network(net, ExportFormat::json));
    CHECK(back.movie_id == net.movie_id);
    REQUIRE(back.nodes.size() == net.nodes.size());
    for (const auto& [key, info] : net.nodes) {
        CHECK(back.nodes.at(key).display_name == info.display_name);
        CHECK(back.nodes.at(key).gender == info.gender);
        CHECK(back.nodes.at(key).actor_name == info.actor_name);
    }
    REQUIRE(back.edges.size() == net.edges.size());
    for (const auto& [key, edge] : net.edges) {
        CHECK(back.edges.at(key).weight == edge.weight);
        CHECK(back.edges.at(key).timestamps == edge.timestamps);
    }
}

TEST_CASE("gexf export imports back with attributes") {
    auto roster = quick_roster("m", {{"Ana", Gender::female}, {"Ben", Gender::male}});
    MovieNetwork net = build_network({at("ana", 1000), at("ben", 2000)}, roster, 60, 1, "m");
    MovieNetwork back = import_gexf(export_network(net, ExportFormat::gexf));
    CHECK(back.nodes.size() == 2);
    CHECK(back.nodes.at("ana").gender == Gender::female);
    CHECK(back.nodes.at("ana").actor_name == "Ana Actor");
    CHECK(back.edge_weight("ana", "ben") == 1);
}

TEST_CASE("export format names parse or throw") {
    CHECK(export_format_from_name("json") == ExportFormat::json);
    CHECK(export_format_from_name("gexf") == ExportFormat::gexf);
    CHECK(export_format_from_name("csv") == ExportFormat::csv);
    CHECK_THROWS_AS(export_format_from_name("xml"), UnsupportedFormatError);
}

TEST_CASE("snapshot keeps only interactions up to the cut") {
    auto roster = quick_roster("m", {{"Ana", Gender::female}, {"Ben", Gender::male},
                                     {"Cleo", Gender::female}});
    std::vector<Mention> mentions = {
        at("ana", 1000), at("ben", 2000), at("ana", 50000), at("cleo", 70000),
    };
    MovieNetwork net = build_network(mentions, roster, 60, 1, "m");
    MovieNetwork early = snapshot(net, 2000);
    CHECK(early.edge_weight("ana", "ben") == 1);
    CHECK(early.edge_weight("ana", "cleo") == 0);  // 70000 > cut, edge dropped
    CHECK(early.nodes.size() == 3);

    MovieNetwork everything = snapshot(net, 1000000);
    CHECK(everything.edges.size() == net.edges.size());
}
