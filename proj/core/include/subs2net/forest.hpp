#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subs2net/features.hpp"

namespace subs2net {

struct ForestParams {
    int tree_count = 200;
    int max_depth = 8;
    int min_leaf = 5;
    int feature_subsample = 0;  // candidate features per split; 0 = floor(sqrt(F))
    uint64_t seed = 42;
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0;
    int left = -1;
    int right = -1;
    int64_t count = 0;          // training samples reaching this node
    double gini = 0;            // impurity at this node
    double pass_fraction = 0;   // positive share at this node
};

using Tree = std::vector<TreeNode>;  // node 0 is the root

struct ForestModel {
    ForestParams params;
    uint64_t schema_hash = 0;
    std::vector<std::string> feature_names;
    std::vector<Tree> trees;
};

// Bagged Gini decision trees over bootstrap resamples, feature subsampling
// at every split, per-tree seeds derived as seed + tree index. Input order
// does not matter: rows are pre-sorted by movie_id. Throws
// TooFewExamplesError (< 20 rows) and SingleClassError.
ForestModel train_forest(const std::vector<LabeledMovie>& dataset, const ForestParams& params);

// Mean of per-tree leaf positive fractions. Throws SchemaMismatchError when
// the vector length does not match the model schema.
double predict_proba(const ForestModel& model, const FeatureVector& features);

struct ClassMetrics {
    double precision = 0, recall = 0, f1 = 0;
};

struct Confusion {
    int64_t tp = 0, fp = 0, tn = 0, fn = 0;
};

struct EvalReport {
    std::optional<double> auc;  // empty when the test set has one class
    ClassMetrics pass_metrics;  // "passes" treated as the positive class
    ClassMetrics fail_metrics;
    Confusion confusion;
    double accuracy = 0;
    int64_t test_size = 0;
};

std::string eval_report_to_json(const EvalReport& report);

// Threshold 0.5 for hard predictions; AUC via the rank statistic with
// midrank ties. Throws EmptySampleError on an empty test set.
EvalReport evaluate(const ForestModel& model, const std::vector<LabeledMovie>& test);

// AUC of scores against boolean labels, rank-statistic form. Empty when one
// class is absent.
std::optional<double> rank_auc(const std::vector<std::pair<double, bool>>& scored);

// Precision over the k most confident predictions (confidence max(p, 1-p),
// ties by movie_id). Throws KTooLargeError when k exceeds the test size.
double precision_at_k(const ForestModel& model, const std::vector<LabeledMovie>& test, int k);

// Mean decrease in Gini impurity per feature, normalized to sum 1, ordered
// descending (ties by schema position).
std::vector<std::pair<std::string, double>> feature_importance(const ForestModel& model);

std::string model_to_json(const ForestModel& model);
// Throws SchemaMismatchError when the stored schema differs from the current
// feature schema, Error on malformed input.
ForestModel model_from_json(const std::string& text);

// Chronological holdout: the newest `holdout` movies (release year, ties by
// movie_id, newest first) become the test set.
struct TrainTestSplit {
    std::vector<LabeledMovie> train;
    std::vector<LabeledMovie> test;
};
TrainTestSplit split_newest(const std::vector<LabeledMovie>& dataset, int holdout);

// Round-robin k-fold by movie_id order; one report per fold.
std::vector<EvalReport> cross_validate(const std::vector<LabeledMovie>& dataset, int folds,
                                       const ForestParams& params);

}  // namespace subs2net
