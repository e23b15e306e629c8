#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subs2net/network.hpp"

namespace subs2net {

struct TriangleCensus {
    std::array<int64_t, 4> counts{};   // triangles containing N women, N = index
    std::array<double, 4> percents{};  // counts / total; all zero when no triangles
    int64_t unknown_excluded = 0;      // triangles touching an unknown-gender node
};

// Closed triplets of the unweighted skeleton, grouped by how many of the
// three endpoints are women. Triangles with an unknown-gender endpoint are
// excluded from the census and tallied separately.
TriangleCensus triangle_census(const MovieNetwork& net);

// Order matches kVertexMetricNames.
enum class RankMetric {
    total_weight,
    degree,
    degree_centrality,
    closeness,
    betweenness,
    weighted_betweenness,
    clustering,
    pagerank,
    weighted_pagerank,
};

const char* rank_metric_name(RankMetric metric);
std::optional<RankMetric> rank_metric_from_name(const std::string& name);

// Character keys ordered by metric descending; ties by total weight
// descending, then key. May return fewer than k entries.
std::vector<std::string> top_k(const MovieNetwork& net, RankMetric metric, int k);

// Female nodes among the top 10 by PageRank.
int females_in_top10(const MovieNetwork& net);

struct DegreeRatio {
    std::optional<double> ratio;  // female sum / male sum; empty when male sum is 0
    bool pass = false;            // 0.8 < ratio < 1.2
};

// Ratio of summed female to summed male connectivity. Weighted sums incident
// edge weights per node; unweighted counts neighbors.
DegreeRatio degree_ratio_test(const MovieNetwork& net, bool weighted = true);

struct GenderSummary {
    int64_t female_count = 0;
    int64_t male_count = 0;
    int64_t unknown_count = 0;
    int females_in_top10 = 0;
    DegreeRatio degree_ratio;  // weighted variant
};

GenderSummary gender_summary(const MovieNetwork& net);

// ---- corpus trend tables ----

struct TrendRecord {
    std::string movie_id;
    int release_year = 0;
    std::vector<std::string> genres;
    // stat name -> value; a movie simply omits stats it cannot provide
    // (e.g. degree ratio with no male nodes)
    std::vector<std::pair<std::string, double>> stats;
};

enum class GroupBy { year, decade, genre, genre_decade };

// Accepts "year", "decade", "genre", and the two-key spelling
// "decade,genre" (either order).
std::optional<GroupBy> group_by_from_name(const std::string& name);

struct TrendRow {
    std::string genre;  // set for genre / genre_decade grouping
    int year = 0;       // year, or decade start; unused for plain genre grouping
    int64_t n = 0;      // movies in the group
    // aligned with TrendTable::stat_names; NaN when no movie in the group
    // carries the stat
    std::vector<double> means;
    std::vector<double> medians;
};

struct TrendTable {
    GroupBy group_by = GroupBy::decade;
    std::vector<std::string> stat_names;  // sorted union over records
    std::vector<TrendRow> rows;
};

// A movie with g genres contributes to g genre groups; decade = year/10*10.
TrendTable corpus_trends(const std::vector<TrendRecord>& records, GroupBy group_by);

// Plot-ready CSV: group key column(s), n, then <stat>_mean,<stat>_median per
// stat. Missing aggregates emit empty fields.
std::string trends_to_csv(const TrendTable& table);

}  // namespace subs2net
