#include "subs2net/features.hpp"

#include <algorithm>

#include "subs2net/error.hpp"
#include "subs2net/gender.hpp"
#include "subs2net/graph_metrics.hpp"
#include "subs2net/text.hpp"

namespace subs2net {

namespace {

constexpr std::array<const char*, 7> kStatNames = {"mean", "median", "std", "min",
                                                   "max",  "q1",     "q3"};

std::vector<std::string> build_schema() {
    std::vector<std::string> names = {"edge_count", "vertex_count", "clique_count"};
    for (const char* metric : kVertexMetricNames) {
        for (const char* stat : kStatNames) {
            names.push_back(std::string(metric) + "_" + stat);
        }
    }
    names.insert(names.end(), {"female_count", "male_count", "unknown_count"});
    for (int n = 0; n <= 3; ++n) names.push_back("triangles_" + std::to_string(n) + "_women");
    for (int n = 0; n <= 3; ++n)
        names.push_back("pct_triangles_" + std::to_string(n) + "_women");
    names.push_back("females_in_top10");
    names.push_back("features_missing");
    return names;
}

}  // namespace

const std::vector<std::string>& feature_schema() {
    static const std::vector<std::string> schema = build_schema();
    return schema;
}

uint64_t feature_schema_hash() {
    static const uint64_t hash = [] {
        uint64_t h = fnv1a64("");
        for (const auto& name : feature_schema()) {
            h = fnv1a64(name + "\n", h);
        }
        return h;
    }();
    return hash;
}

FeatureVector assemble_features(const MovieNetwork& net) {
    const NetworkFeatures nf = compute_network_features(net);
    const TriangleCensus census = triangle_census(net);
    const GenderSummary summary = gender_summary(net);

    FeatureVector v;
    v.reserve(feature_schema().size());
    v.push_back(static_cast<double>(nf.edge_count));
    v.push_back(static_cast<double>(nf.vertex_count));
    v.push_back(static_cast<double>(nf.clique_count));
    for (const Aggregate& a : nf.aggregates) {
        if (nf.has_aggregates) {
            v.insert(v.end(), {a.mean, a.median, a.std_dev, a.min, a.max, a.q1, a.q3});
        } else {
            v.insert(v.end(), {0, 0, 0, 0, 0, 0, 0});
        }
    }
    v.push_back(static_cast<double>(summary.female_count));
    v.push_back(static_cast<double>(summary.male_count));
    v.push_back(static_cast<double>(summary.unknown_count));
    for (int n = 0; n <= 3; ++n) v.push_back(static_cast<double>(census.counts[n]));
    for (int n = 0; n <= 3; ++n) v.push_back(census.percents[n]);
    v.push_back(static_cast<double>(summary.females_in_top10));
    v.push_back(nf.has_aggregates ? 0.0 : 1.0);
    return v;
}

std::vector<BechdelLabel> load_bechdel_labels(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<BechdelLabel> labels;
    bool header = true;
    for (const std::string& raw : split(text, '\n')) {
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        const std::vector<std::string> fields = parse_csv_line(line);
        if (fields.size() < 2) continue;
        BechdelLabel label;
        label.movie_id = trim(fields[0]);
        try {
            label.rating = std::stoi(trim(fields[1]));
        } catch (const std::exception&) {
            continue;
        }
        label.rating = std::clamp(label.rating, 0, 3);
        if (!label.movie_id.empty()) labels.push_back(std::move(label));
    }
    return labels;
}

}  // namespace subs2net
