#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subs2net/network.hpp"

namespace subs2net {

using FeatureVector = std::vector<double>;

// Fixed classifier feature schema: edge/vertex/clique counts, the 7
// aggregate stats for each vertex metric, gender counts, triangle census
// counts and percents, females-in-top-10, and a missingness flag set when
// the graph was too small to aggregate.
const std::vector<std::string>& feature_schema();

// FNV-1a over the joined schema names; stored in model files so a model is
// never applied to differently-shaped vectors.
uint64_t feature_schema_hash();

// Values aligned with feature_schema().
FeatureVector assemble_features(const MovieNetwork& net);

struct LabeledMovie {
    std::string movie_id;
    int release_year = 0;
    FeatureVector features;
    int raw_score = 0;  // highest of the three rules passed, 0-3
    bool label = false; // raw_score == 3
};

struct BechdelLabel {
    std::string movie_id;
    int rating = 0;
};

// CSV with header movie_id,rating; rating clamped to 0..3.
std::vector<BechdelLabel> load_bechdel_labels(const std::string& path);

}  // namespace subs2net
