#include "subs2net/gender.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "graph_view.hpp"
#include "subs2net/graph_metrics.hpp"
#include "subs2net/text.hpp"

namespace subs2net {

TriangleCensus triangle_census(const MovieNetwork& net) {
    const detail::GraphView g(net);
    TriangleCensus census;
    int64_t total = 0;
    // For each edge (u,v) with u < v, count common neighbors w > v so every
    // triangle is seen exactly once.
    for (int u = 0; u < g.n(); ++u) {
        for (const auto& [v, w_uv] : g.adj[static_cast<size_t>(u)]) {
            if (v <= u) continue;
            for (const auto& [w, w_vw] : g.adj[static_cast<size_t>(v)]) {
                if (w <= v) continue;
                if (!g.connected(u, w)) continue;
                const Gender gu = g.genders[static_cast<size_t>(u)];
                const Gender gv = g.genders[static_cast<size_t>(v)];
                const Gender gw = g.genders[static_cast<size_t>(w)];
                if (gu == Gender::unknown || gv == Gender::unknown || gw == Gender::unknown) {
                    ++census.unknown_excluded;
                    continue;
                }
                int women = (gu == Gender::female) + (gv == Gender::female) +
                            (gw == Gender::female);
                ++census.counts[static_cast<size_t>(women)];
                ++total;
            }
        }
    }
    if (total > 0) {
        for (size_t i = 0; i < 4; ++i)
            census.percents[i] =
                static_cast<double>(census.counts[i]) / static_cast<double>(total);
    }
    return census;
}

const char* rank_metric_name(RankMetric metric) {
    return kVertexMetricNames[static_cast<size_t>(metric)];
}

std::optional<RankMetric> rank_metric_from_name(const std::string& name) {
    for (size_t i = 0; i < kVertexMetricNames.size(); ++i) {
        if (name == kVertexMetricNames[i]) return static_cast<RankMetric>(i);
    }
    return std::nullopt;
}

std::vector<std::string> top_k(const MovieNetwork& net, RankMetric metric, int k) {
    if (k <= 0) return {};
    const auto rows = compute_vertex_features(net);
    const size_t mi = static_cast<size_t>(metric);
    std::vector<std::pair<std::string, const VertexFeatureRow*>> order;
    order.reserve(rows.size());
    for (const auto& [key, row] : rows) order.emplace_back(key, &row);
    std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
        const double ma = a.second->metric(mi);
        const double mb = b.second->metric(mi);
        if (ma != mb) return ma > mb;
        if (a.second->total_weight != b.second->total_weight)
            return a.second->total_weight > b.second->total_weight;
        return a.first < b.first;
    });
    if (order.size() > static_cast<size_t>(k)) order.resize(static_cast<size_t>(k));
    std::vector<std::string> keys;
    keys.reserve(order.size());
    for (const auto& [key, row] : order) keys.push_back(key);
    return keys;
}

int females_in_top10(const MovieNetwork& net) {
    int count = 0;
    for (const std::string& key : top_k(net, RankMetric::pagerank, 10)) {
        auto it = net.nodes.find(key);
        if (it != net.nodes.end() && it->second.gender == Gender::female) ++count;
    }
    return count;
}

DegreeRatio degree_ratio_test(const MovieNetwork& net, bool weighted) {
    const detail::GraphView g(net);
    double female = 0, male = 0;
    for (int v = 0; v < g.n(); ++v) {
        const auto& nbrs = g.adj[static_cast<size_t>(v)];
        double score = 0;
        if (weighted) {
            for (const auto& [u, w] : nbrs) score += static_cast<double>(w);
        } else {
            score = static_cast<double>(nbrs.size());
        }
        if (g.genders[static_cast<size_t>(v)] == Gender::female) female += score;
        else if (g.genders[static_cast<size_t>(v)] == Gender::male) male += score;
    }
    DegreeRatio result;
    if (male > 0) {
        result.ratio = female / male;
        result.pass = *result.ratio > 0.8 && *result.ratio < 1.2;
    }
    return result;
}

GenderSummary gender_summary(const MovieNetwork& net) {
    GenderSummary s;
    for (const auto& [key, info] : net.nodes) {
        switch (info.gender) {
            case Gender::female: ++s.female_count; break;
            case Gender::male: ++s.male_count; break;
            case Gender::unknown: ++s.unknown_count; break;
        }
    }
    s.females_in_top10 = females_in_top10(net);
    s.degree_ratio = degree_ratio_test(net, true);
    return s;
}

std::optional<GroupBy> group_by_from_name(const std::string& name) {
    std::vector<std::string> parts;
    for (const std::string& p : split(name, ',')) {
        const std::string t = trim(p);
        if (!t.empty()) parts.push_back(t);
    }
    std::sort(parts.begin(), parts.end());
    if (parts == std::vector<std::string>{"year"}) return GroupBy::year;
    if (parts == std::vector<std::string>{"decade"}) return GroupBy::decade;
    if (parts == std::vector<std::string>{"genre"}) return GroupBy::genre;
    if (parts == std::vector<std::string>{"decade", "genre"}) return GroupBy::genre_decade;
    return std::nullopt;
}

namespace {

double median_of(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    const size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace

TrendTable corpus_trends(const std::vector<TrendRecord>& records, GroupBy group_by) {
    TrendTable table;
    table.group_by = group_by;

    std::set<std::string> names;
    for (const auto& rec : records) {
        for (const auto& [name, value] : rec.stats) names.insert(name);
    }
    table.stat_names.assign(names.begin(), names.end());

    // group key -> stat index -> contributed values
    std::map<std::pair<std::string, int>, std::vector<std::vector<double>>> groups;
    std::map<std::pair<std::string, int>, int64_t> group_sizes;
    for (const auto& rec : records) {
        std::vector<std::pair<std::string, int>> keys;
        const int decade = rec.release_year / 10 * 10;
        switch (group_by) {
            case GroupBy::year: keys.emplace_back("", rec.release_year); break;
            case GroupBy::decade: keys.emplace_back("", decade); break;
            case GroupBy::genre:
                for (const auto& genre : rec.genres) keys.emplace_back(genre, 0);
                break;
            case GroupBy::genre_decade:
                for (const auto& genre : rec.genres) keys.emplace_back(genre, decade);
                break;
        }
        for (const auto& key : keys) {
            auto& bucket = groups[key];
            if (bucket.empty()) bucket.resize(table.stat_names.size());
            ++group_sizes[key];
            for (const auto& [name, value] : rec.stats) {
                const auto it =
                    std::lower_bound(table.stat_names.begin(), table.stat_names.end(), name);
                bucket[static_cast<size_t>(it - table.stat_names.begin())].push_back(value);
            }
        }
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (auto& [key, bucket] : groups) {
        TrendRow row;
        row.genre = key.first;
        row.year = key.second;
        row.n = group_sizes[key];
        row.means.assign(table.stat_names.size(), nan);
        row.medians.assign(table.stat_names.size(), nan);
        for (size_t i = 0; i < bucket.size(); ++i) {
            if (bucket[i].empty()) continue;
            double sum = 0;
            for (double v : bucket[i]) sum += v;
            row.means[i] = sum / static_cast<double>(bucket[i].size());
            row.medians[i] = median_of(bucket[i]);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string trends_to_csv(const TrendTable& table) {
    std::ostringstream out;
    switch (table.group_by) {
        case GroupBy::year: out << "year"; break;
        case GroupBy::decade: out << "decade"; break;
        case GroupBy::genre: out << "genre"; break;
        case GroupBy::genre_decade: out << "genre,decade"; break;
    }
    out << ",n";
    for (const auto& name : table.stat_names) out << ',' << name << "_mean," << name << "_median";
    out << '\n';
    for (const auto& row : table.rows) {
        switch (table.group_by) {
            case GroupBy::year:
            case GroupBy::decade: out << row.year; break;
            case GroupBy::genre: out << csv_escape(row.genre); break;
            case GroupBy::genre_decade: out << csv_escape(row.genre) << ',' << row.year; break;
        }
        out << ',' << row.n;
        for (size_t i = 0; i < table.stat_names.size(); ++i) {
            out << ',';
            if (!std::isnan(row.means[i])) out << format_double(row.means[i]);
            out << ',';
            if (!std::isnan(row.medians[i])) out << format_double(row.medians[i]);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace subs2net
