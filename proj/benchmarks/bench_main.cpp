// Microbenchmarks for the hot paths: name scoring, mention resolution,
// network assembly, graph metrics, and forest training.

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "subs2net/features.hpp"
#include "subs2net/forest.hpp"
#include "subs2net/graph_metrics.hpp"
#include "subs2net/mentions.hpp"
#include "subs2net/network.hpp"
#include "subs2net/roster.hpp"
#include "subs2net/similarity.hpp"
#include "subs2net/subtitle.hpp"

namespace {

using namespace subs2net;

std::vector<RosterEntry> bench_roster(int characters) {
    const char* firsts[] = {"anna",  "boris", "carla", "dmitri", "elena",
                            "frank", "greta", "henry", "irina",  "jonas"};
    const char* lasts[] = {"stone", "vance", "moore", "klein", "ortiz",
                           "perez", "quinn", "reyes", "silva", "turner"};
    std::vector<RosterEntry> roster;
    for (int i = 0; i < characters; ++i) {
        RosterEntry e;
        e.movie_id = "bench";
        e.character_name =
            std::string(firsts[i % 10]) + " " + lasts[(i / 10) % 10] + std::to_string(i);
        e.actor_name = e.character_name + " actor";
        e.gender = i % 2 == 0 ? Gender::female : Gender::male;
        e.cast_order = i + 1;
        roster.push_back(std::move(e));
    }
    return roster;
}

std::vector<Mention> bench_mentions(int count, int characters) {
    const auto roster = bench_roster(characters);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(0, characters - 1);
    std::vector<Mention> mentions;
    for (int i = 0; i < count; ++i) {
        Mention m;
        m.character_key = roster[static_cast<size_t>(pick(rng))].character_name;
        m.time_ms = static_cast<int64_t>(i) * 900;
        m.source = MentionSource::name_match;
        mentions.push_back(std::move(m));
    }
    return mentions;
}

MovieNetwork bench_graph(int n, double edge_prob) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> weight(1, 10);
    MovieNetwork net;
    net.movie_id = "bench";
    const auto key = [](int i) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), "v%03d", i);
        return std::string(buf);
    };
    for (int i = 0; i < n; ++i) net.nodes[key(i)] = NodeInfo{key(i), Gender::unknown, ""};
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (coin(rng) < edge_prob) {
                auto& edge = net.edges[MovieNetwork::edge_key(key(u), key(v))];
                edge.weight = weight(rng);
                edge.timestamps.assign(static_cast<size_t>(edge.weight), 0);
            }
        }
    }
    return net;
}

std::vector<LabeledMovie> bench_dataset(int rows) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<LabeledMovie> rows_out;
    for (int i = 0; i < rows; ++i) {
        LabeledMovie m;
        char id[16];
        std::snprintf(id, sizeof(id), "b%05d", i);
        m.movie_id = id;
        m.release_year = 1960 + i % 60;
        m.features.assign(feature_schema().size(), 0.0);
        for (size_t f = 0; f < m.features.size(); ++f) m.features[f] = uniform(rng);
        m.label = m.features[66] > 0.5;  // female_count column
        m.raw_score = m.label ? 3 : 1;
        rows_out.push_back(std::move(m));
    }
    return rows_out;
}

void BM_similarity(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(similarity("don vito corleone", "don corleone"));
        benchmark::DoNotOptimize(similarity("marty mcfly", "marty mcfly sr"));
        benchmark::DoNotOptimize(similarity("bruce wayne", "wayne bruce"));
    }
}
BENCHMARK(BM_similarity);

void BM_match_entity(benchmark::State& state) {
    const auto roster = bench_roster(static_cast<int>(state.range(0)));
    const NameIndex index = build_name_index(roster);
    for (auto _ : state) {
        benchmark::DoNotOptimize(match_entity("anna", index, 85));
        benchmark::DoNotOptimize(match_entity("ANNA STONE", index, 85));
        benchmark::DoNotOptimize(match_entity("anja stune", index, 85));
    }
}
BENCHMARK(BM_match_entity)->Arg(20)->Arg(60);

void BM_find_mentions(benchmark::State& state) {
    std::string srt;
    for (int i = 0; i < 600; ++i) {
        char block[256];
        std::snprintf(block, sizeof(block),
                      "%d\n00:%02d:%02d,000 --> 00:%02d:%02d,500\n"
                      "ANNA STONE0: Listen, Boris, we leave tonight.\n\n",
                      i + 1, i / 60, i % 60, i / 60, i % 60);
        srt += block;
    }
    const SubtitleDocument doc = parse_srt(srt, "bench");
    const auto roster = bench_roster(40);
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_mentions(doc, roster, 85));
    }
}
BENCHMARK(BM_find_mentions);

void BM_build_network(benchmark::State& state) {
    const auto mentions = bench_mentions(static_cast<int>(state.range(0)), 20);
    const auto roster = bench_roster(20);
    for (auto _ : state) {
        auto copy = mentions;
        benchmark::DoNotOptimize(build_network(std::move(copy), roster, 60, 1, "bench"));
    }
}
BENCHMARK(BM_build_network)->Arg(1000)->Arg(10000);

void BM_betweenness(benchmark::State& state) {
    const MovieNetwork net = bench_graph(static_cast<int>(state.range(0)), 0.08);
    for (auto _ : state) {
        benchmark::DoNotOptimize(betweenness_all(net, true, true));
    }
}
BENCHMARK(BM_betweenness)->Arg(50)->Arg(100);

void BM_pagerank(benchmark::State& state) {
    const MovieNetwork net = bench_graph(100, 0.08);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pagerank(net, 0.85, true));
    }
}
BENCHMARK(BM_pagerank);

void BM_network_features(benchmark::State& state) {
    const MovieNetwork net = bench_graph(60, 0.1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_network_features(net));
    }
}
BENCHMARK(BM_network_features);

void BM_train_forest(benchmark::State& state) {
    const auto dataset = bench_dataset(static_cast<int>(state.range(0)));
    ForestParams params;
    params.tree_count = 50;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train_forest(dataset, params));
    }
}
BENCHMARK(BM_train_forest)->Arg(200)->Arg(600)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
