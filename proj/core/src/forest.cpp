#include "subs2net/forest.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "subs2net/error.hpp"
#include "subs2net/text.hpp"

namespace subs2net {

namespace {

// Deterministic bounded draw (multiply-shift); avoids the
// implementation-defined std::uniform_int_distribution.
size_t bounded(std::mt19937_64& rng, size_t n) {
    return static_cast<size_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

double gini_impurity(int64_t positives, int64_t total) {
    if (total == 0) return 0;
    const double p = static_cast<double>(positives) / static_cast<double>(total);
    return 1.0 - p * p - (1.0 - p) * (1.0 - p);
}

struct TreeBuilder {
    const std::vector<LabeledMovie>& rows;
    const ForestParams& params;
    std::mt19937_64 rng;
    int n_features;
    int subsample;
    Tree nodes;

    // Partial Fisher-Yates; result sorted so candidate evaluation order never
    // depends on the shuffle.
    std::vector<int> pick_features() {
        std::vector<int> pool(static_cast<size_t>(n_features));
        for (int i = 0; i < n_features; ++i) pool[static_cast<size_t>(i)] = i;
        for (int i = 0; i < subsample; ++i) {
            const size_t j =
                static_cast<size_t>(i) + bounded(rng, pool.size() - static_cast<size_t>(i));
            std::swap(pool[static_cast<size_t>(i)], pool[j]);
        }
        pool.resize(static_cast<size_t>(subsample));
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    int build(std::vector<size_t>& samples, int depth) {
        const int64_t total = static_cast<int64_t>(samples.size());
        int64_t positives = 0;
        for (size_t idx : samples) positives += rows[idx].label ? 1 : 0;

        const int node_id = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[static_cast<size_t>(node_id)].count = total;
        nodes[static_cast<size_t>(node_id)].gini = gini_impurity(positives, total);
        nodes[static_cast<size_t>(node_id)].pass_fraction =
            total > 0 ? static_cast<double>(positives) / static_cast<double>(total) : 0;

        if (depth >= params.max_depth || positives == 0 || positives == total ||
            total < 2 * params.min_leaf) {
            return node_id;
        }

        const std::vector<int> features = pick_features();
        double best_gain = 1e-12;  // zero-gain splits are not worth a node
        int best_feature = -1;
        double best_threshold = 0;

        std::vector<size_t> order(samples);
        for (int f : features) {
            std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
                return rows[a].features[static_cast<size_t>(f)] <
                       rows[b].features[static_cast<size_t>(f)];
            });
            // sweep: everything at or below the threshold goes left
            int64_t left_n = 0, left_pos = 0;
            const double parent = nodes[static_cast<size_t>(node_id)].gini;
            for (size_t i = 0; i + 1 < order.size(); ++i) {
                ++left_n;
                left_pos += rows[order[i]].label ? 1 : 0;
                const double v = rows[order[i]].features[static_cast<size_t>(f)];
                const double next = rows[order[i + 1]].features[static_cast<size_t>(f)];
                if (v == next) continue;  // can't separate equal values
                const int64_t right_n = total - left_n;
                if (left_n < params.min_leaf || right_n < params.min_leaf) continue;
                const int64_t right_pos = positives - left_pos;
                const double gain =
                    parent -
                    (static_cast<double>(left_n) / static_cast<double>(total)) *
                        gini_impurity(left_pos, left_n) -
                    (static_cast<double>(right_n) / static_cast<double>(total)) *
                        gini_impurity(right_pos, right_n);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = f;
                    best_threshold = v + (next - v) / 2;
                }
            }
        }

        if (best_feature < 0) return node_id;

        std::vector<size_t> left_samples, right_samples;
        left_samples.reserve(samples.size());
        for (size_t idx : samples) {
            if (rows[idx].features[static_cast<size_t>(best_feature)] <= best_threshold) {
                left_samples.push_back(idx);
            } else {
                right_samples.push_back(idx);
            }
        }
        if (left_samples.empty() || right_samples.empty()) {
            // midpoint rounded onto one of the sample values; not worth a split
            return node_id;
        }
        nodes[static_cast<size_t>(node_id)].feature = best_feature;
        nodes[static_cast<size_t>(node_id)].threshold = best_threshold;
        const int left_id = build(left_samples, depth + 1);
        nodes[static_cast<size_t>(node_id)].left = left_id;
        const int right_id = build(right_samples, depth + 1);
        nodes[static_cast<size_t>(node_id)].right = right_id;
        return node_id;
    }
};

double tree_predict(const Tree& tree, const FeatureVector& features) {
    size_t at = 0;
    while (tree[at].feature >= 0) {
        const TreeNode& node = tree[at];
        at = static_cast<size_t>(
            features[static_cast<size_t>(node.feature)] <= node.threshold ? node.left
                                                                          : node.right);
    }
    return tree[at].pass_fraction;
}

struct ScoredRow {
    double proba = 0;
    bool label = false;
    const LabeledMovie* row = nullptr;
};

std::vector<ScoredRow> score_all(const ForestModel& model,
                                 const std::vector<LabeledMovie>& test) {
    std::vector<ScoredRow> scored;
    scored.reserve(test.size());
    for (const auto& movie : test) {
        scored.push_back({predict_proba(model, movie.features), movie.label, &movie});
    }
    return scored;
}

}  // namespace

ForestModel train_forest(const std::vector<LabeledMovie>& dataset, const ForestParams& params) {
    if (dataset.size() < 20) {
        throw TooFewExamplesError("training needs at least 20 examples, got " +
                                  std::to_string(dataset.size()));
    }
    std::vector<LabeledMovie> rows(dataset);
    std::sort(rows.begin(), rows.end(), [](const LabeledMovie& a, const LabeledMovie& b) {
        return a.movie_id < b.movie_id;
    });
    const bool first = rows.front().label;
    if (std::all_of(rows.begin(), rows.end(),
                    [&](const LabeledMovie& m) { return m.label == first; })) {
        throw SingleClassError("training set holds a single class");
    }
    const int n_features = static_cast<int>(feature_schema().size());
    for (const auto& row : rows) {
        if (static_cast<int>(row.features.size()) != n_features) {
            throw SchemaMismatchError("row " + row.movie_id + " has " +
                                      std::to_string(row.features.size()) + " features, want " +
                                      std::to_string(n_features));
        }
    }

    ForestModel model;
    model.params = params;
    model.schema_hash = feature_schema_hash();
    model.feature_names = feature_schema();
    model.trees.resize(static_cast<size_t>(params.tree_count));

    int subsample = params.feature_subsample > 0
                        ? std::min(params.feature_subsample, n_features)
                        : static_cast<int>(std::sqrt(static_cast<double>(n_features)));
    if (subsample < 1) subsample = 1;

    for (int t = 0; t < params.tree_count; ++t) {
        TreeBuilder builder{rows, params,
                            std::mt19937_64(params.seed + static_cast<uint64_t>(t)),
                            n_features, subsample, {}};
        std::vector<size_t> bootstrap(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) bootstrap[i] = bounded(builder.rng, rows.size());
        builder.build(bootstrap, 0);
        model.trees[static_cast<size_t>(t)] = std::move(builder.nodes);
    }
    return model;
}

double predict_proba(const ForestModel& model, const FeatureVector& features) {
    if (features.size() != model.feature_names.size()) {
        throw SchemaMismatchError("feature vector length " + std::to_string(features.size()) +
                                  " does not match model schema " +
                                  std::to_string(model.feature_names.size()));
    }
    if (model.trees.empty()) return 0;
    double sum = 0;
    for (const Tree& tree : model.trees) sum += tree_predict(tree, features);
    return sum / static_cast<double>(model.trees.size());
}

std::optional<double> rank_auc(const std::vector<std::pair<double, bool>>& scored) {
    const size_t n = scored.size();
    size_t positives = 0;
    for (const auto& [score, label] : scored) positives += label ? 1 : 0;
    const size_t negatives = n - positives;
    if (positives == 0 || negatives == 0) return std::nullopt;

    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return scored[a].first < scored[b].first; });
    double positive_rank_sum = 0;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && scored[order[j + 1]].first == scored[order[i]].first) ++j;
        const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (size_t k = i; k <= j; ++k) {
            if (scored[order[k]].second) positive_rank_sum += shared;
        }
        i = j + 1;
    }
    const double np = static_cast<double>(positives);
    const double u = positive_rank_sum - np * (np + 1) / 2.0;
    return u / (np * static_cast<double>(negatives));
}

EvalReport evaluate(const ForestModel& model, const std::vector<LabeledMovie>& test) {
    if (test.empty()) throw EmptySampleError("evaluate: empty test set");
    const std::vector<ScoredRow> scored = score_all(model, test);

    EvalReport report;
    report.test_size = static_cast<int64_t>(test.size());
    std::vector<std::pair<double, bool>> pairs;
    pairs.reserve(scored.size());
    for (const auto& s : scored) {
        pairs.emplace_back(s.proba, s.label);
        const bool predicted = s.proba >= 0.5;
        if (predicted && s.label) ++report.confusion.tp;
        else if (predicted && !s.label) ++report.confusion.fp;
        else if (!predicted && !s.label) ++report.confusion.tn;
        else ++report.confusion.fn;
    }
    report.auc = rank_auc(pairs);

    const auto& c = report.confusion;
    const auto metrics = [](int64_t tp, int64_t fp, int64_t fn) {
        ClassMetrics m;
        m.precision = tp + fp > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0;
        m.recall = tp + fn > 0 ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0;
        m.f1 = m.precision + m.recall > 0
                   ? 2 * m.precision * m.recall / (m.precision + m.recall)
                   : 0;
        return m;
    };
    report.pass_metrics = metrics(c.tp, c.fp, c.fn);
    report.fail_metrics = metrics(c.tn, c.fn, c.fp);  // negatives as the positive class
    report.accuracy =
        static_cast<double>(c.tp + c.tn) / static_cast<double>(report.test_size);
    return report;
}

std::string eval_report_to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    if (report.auc) j["auc"] = *report.auc;
    else j["auc"] = nullptr;
    j["accuracy"] = report.accuracy;
    j["test_size"] = report.test_size;
    const auto cls = [](const ClassMetrics& m) {
        return nlohmann::ordered_json{
            {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
    };
    j["pass"] = cls(report.pass_metrics);
    j["fail"] = cls(report.fail_metrics);
    j["confusion"] = {{"tp", report.confusion.tp},
                      {"fp", report.confusion.fp},
                      {"tn", report.confusion.tn},
                      {"fn", report.confusion.fn}};
    return j.dump(2) + "\n";
}

double precision_at_k(const ForestModel& model, const std::vector<LabeledMovie>& test, int k) {
    if (k < 1 || static_cast<size_t>(k) > test.size()) {
        throw KTooLargeError("k=" + std::to_string(k) + " out of range for test size " +
                             std::to_string(test.size()));
    }
    std::vector<ScoredRow> scored = score_all(model, test);
    std::sort(scored.begin(), scored.end(), [](const ScoredRow& a, const ScoredRow& b) {
        const double ca = std::max(a.proba, 1 - a.proba);
        const double cb = std::max(b.proba, 1 - b.proba);
        if (ca != cb) return ca > cb;
        return a.row->movie_id < b.row->movie_id;
    });
    int64_t correct = 0;
    for (int i = 0; i < k; ++i) {
        const bool predicted = scored[static_cast<size_t>(i)].proba >= 0.5;
        if (predicted == scored[static_cast<size_t>(i)].label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(k);
}

std::vector<std::pair<std::string, double>> feature_importance(const ForestModel& model) {
    std::vector<double> totals(model.feature_names.size(), 0);
    for (const Tree& tree : model.trees) {
        if (tree.empty()) continue;
        const double root_count = static_cast<double>(tree[0].count);
        if (root_count == 0) continue;
        for (const TreeNode& node : tree) {
            if (node.feature < 0) continue;
            const TreeNode& l = tree[static_cast<size_t>(node.left)];
            const TreeNode& r = tree[static_cast<size_t>(node.right)];
            const double decrease =
                (static_cast<double>(node.count) * node.gini -
                 static_cast<double>(l.count) * l.gini -
                 static_cast<double>(r.count) * r.gini) /
                root_count;
            totals[static_cast<size_t>(node.feature)] += decrease;
        }
    }
    double sum = 0;
    for (double v : totals) sum += v;
    if (sum > 0) {
        for (double& v : totals) v /= sum;
    }
    std::vector<size_t> order(totals.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return totals[a] > totals[b]; });
    std::vector<std::pair<std::string, double>> result;
    result.reserve(order.size());
    for (size_t i : order) result.emplace_back(model.feature_names[i], totals[i]);
    return result;
}

std::string model_to_json(const ForestModel& model) {
    nlohmann::ordered_json j;
    j["format"] = "subs2net-forest";
    j["version"] = 1;
    j["schema_hash"] = hex64(model.schema_hash);
    j["params"] = {{"tree_count", model.params.tree_count},
                   {"max_depth", model.params.max_depth},
                   {"min_leaf", model.params.min_leaf},
                   {"feature_subsample", model.params.feature_subsample},
                   {"seed", model.params.seed}};
    j["feature_names"] = model.feature_names;
    nlohmann::ordered_json trees = nlohmann::ordered_json::array();
    for (const Tree& tree : model.trees) {
        nlohmann::ordered_json t = nlohmann::ordered_json::array();
        for (const TreeNode& node : tree) {
            t.push_back({{"f", node.feature},
                         {"t", node.threshold},
                         {"l", node.left},
                         {"r", node.right},
                         {"n", node.count},
                         {"g", node.gini},
                         {"p", node.pass_fraction}});
        }
        trees.push_back(std::move(t));
    }
    j["trees"] = std::move(trees);
    return j.dump() + "\n";
}

ForestModel model_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("model parse failed: ") + e.what());
    }
    if (!j.is_object() || j.value("format", "") != "subs2net-forest") {
        throw Error("not a subs2net-forest model file");
    }
    if (j.value("version", 0) != 1) {
        throw Error("unsupported model version");
    }
    ForestModel model;
    try {
        const auto& p = j.at("params");
        model.params.tree_count = p.at("tree_count").get<int>();
        model.params.max_depth = p.at("max_depth").get<int>();
        model.params.min_leaf = p.at("min_leaf").get<int>();
        model.params.feature_subsample = p.at("feature_subsample").get<int>();
        model.params.seed = p.at("seed").get<uint64_t>();
        model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        const std::string stored_hash = j.at("schema_hash").get<std::string>();
        if (stored_hash != hex64(feature_schema_hash()) ||
            model.feature_names != feature_schema()) {
            throw SchemaMismatchError("model was trained against a different feature schema");
        }
        model.schema_hash = feature_schema_hash();
        for (const auto& jt : j.at("trees")) {
            Tree tree;
            tree.reserve(jt.size());
            for (const auto& jn : jt) {
                TreeNode node;
                node.feature = jn.at("f").get<int>();
                node.threshold = jn.at("t").get<double>();
                node.left = jn.at("l").get<int>();
                node.right = jn.at("r").get<int>();
                node.count = jn.at("n").get<int64_t>();
                node.gini = jn.at("g").get<double>();
                node.pass_fraction = jn.at("p").get<double>();
                tree.push_back(node);
            }
            model.trees.push_back(std::move(tree));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("model fields malformed: ") + e.what());
    }
    return model;
}

TrainTestSplit split_newest(const std::vector<LabeledMovie>& dataset, int holdout) {
    std::vector<LabeledMovie> rows(dataset);
    std::sort(rows.begin(), rows.end(), [](const LabeledMovie& a, const LabeledMovie& b) {
        if (a.release_year != b.release_year) return a.release_year > b.release_year;
        return a.movie_id > b.movie_id;
    });
    TrainTestSplit result;
    const size_t cut = std::min(rows.size(), static_cast<size_t>(std::max(holdout, 0)));
    result.test.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(cut));
    result.train.assign(rows.begin() + static_cast<std::ptrdiff_t>(cut), rows.end());
    return result;
}

std::vector<EvalReport> cross_validate(const std::vector<LabeledMovie>& dataset, int folds,
                                       const ForestParams& params) {
    if (folds < 2) throw Error("cross_validate needs at least 2 folds");
    std::vector<LabeledMovie> rows(dataset);
    std::sort(rows.begin(), rows.end(), [](const LabeledMovie& a, const LabeledMovie& b) {
        return a.movie_id < b.movie_id;
    });
    std::vector<EvalReport> reports;
    reports.reserve(static_cast<size_t>(folds));
    for (int f = 0; f < folds; ++f) {
        std::vector<LabeledMovie> train, test;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i % static_cast<size_t>(folds)) == f) test.push_back(rows[i]);
            else train.push_back(rows[i]);
        }
        const ForestModel model = train_forest(train, params);
        reports.push_back(evaluate(model, test));
    }
    return reports;
}

}  // namespace subs2net
