#include "subs2net/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "subs2net/error.hpp"
#include "subs2net/evaluation.hpp"
#include "subs2net/features.hpp"
#include "subs2net/forest.hpp"
#include "subs2net/gender.hpp"
#include "subs2net/graph_metrics.hpp"
#include "subs2net/mentions.hpp"
#include "subs2net/network.hpp"
#include "subs2net/roster.hpp"
#include "subs2net/subtitle.hpp"
#include "subs2net/text.hpp"

namespace subs2net {

namespace fs = std::filesystem;

bool apply_config_value(PipelineConfig& config, const std::string& key,
                        const std::string& value) {
    const auto as_int = [&](int& slot) {
        try {
            slot = std::stoi(value);
        } catch (const std::exception&) {
            throw ManifestError("config value for '" + key + "' is not a number: " + value);
        }
    };
    if (key == "t_window_s") as_int(config.t_window_s);
    else if (key == "w_min") as_int(config.w_min);
    else if (key == "threshold") as_int(config.threshold);
    else if (key == "min_votes") as_int(config.min_votes);
    else if (key == "seed") {
        try {
            config.seed = std::stoull(value);
        } catch (const std::exception&) {
            throw ManifestError("config value for 'seed' is not a number: " + value);
        }
    } else if (key == "group_by") config.group_by = value;
    else if (key == "holdout_newest") as_int(config.holdout_newest);
    else if (key == "tree_count") as_int(config.tree_count);
    else if (key == "max_depth") as_int(config.max_depth);
    else if (key == "min_leaf") as_int(config.min_leaf);
    else if (key == "feature_subsample") as_int(config.feature_subsample);
    else return false;
    return true;
}

void apply_config_file(PipelineConfig& config, const std::string& path) {
    const std::string text = read_file(path);
    int line_no = 0;
    for (const std::string& raw : split(text, '\n')) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ManifestError(path + ":" + std::to_string(line_no) +
                                ": expected key=value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!apply_config_value(config, key, value)) {
            throw ManifestError(path + ":" + std::to_string(line_no) + ": unknown config key '" +
                                key + "'");
        }
    }
}

std::string config_to_text(const PipelineConfig& c) {
    std::ostringstream out;
    out << "t_window_s=" << c.t_window_s << '\n';
    out << "w_min=" << c.w_min << '\n';
    out << "threshold=" << c.threshold << '\n';
    out << "min_votes=" << c.min_votes << '\n';
    out << "seed=" << c.seed << '\n';
    out << "group_by=" << c.group_by << '\n';
    out << "holdout_newest=" << c.holdout_newest << '\n';
    out << "tree_count=" << c.tree_count << '\n';
    out << "max_depth=" << c.max_depth << '\n';
    out << "min_leaf=" << c.min_leaf << '\n';
    out << "feature_subsample=" << c.feature_subsample << '\n';
    return out.str();
}

namespace {

std::string resolve_path(const std::string& base_dir, const std::string& path) {
    if (path.empty()) return path;
    fs::path p(path);
    if (p.is_absolute()) return p.string();
    return (fs::path(base_dir) / p).lexically_normal().string();
}

void require_exists(const std::string& path, const std::string& what) {
    if (!fs::exists(path)) throw ManifestError(what + " does not exist: " + path);
}

}  // namespace

CorpusManifest load_manifest(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const IoError&) {
        throw ManifestError("cannot read manifest: " + path);
    } catch (const nlohmann::json::exception& e) {
        throw ManifestError(std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ManifestError("manifest root must be an object");

    CorpusManifest manifest;
    manifest.base_dir = fs::path(path).parent_path().string();
    if (manifest.base_dir.empty()) manifest.base_dir = ".";

    try {
        manifest.cast_path = resolve_path(manifest.base_dir, j.at("cast").get<std::string>());
        manifest.gender_path =
            resolve_path(manifest.base_dir, j.at("genders").get<std::string>());
        manifest.blacklist_path =
            resolve_path(manifest.base_dir, j.value("blacklist", std::string()));
        manifest.labels_path = resolve_path(manifest.base_dir, j.value("labels", std::string()));

        if (j.count("config")) {
            if (!j["config"].is_object()) throw ManifestError("manifest config must be an object");
            for (const auto& [key, value] : j["config"].items()) {
                const std::string text =
                    value.is_string() ? value.get<std::string>() : value.dump();
                if (!apply_config_value(manifest.config, key, text)) {
                    throw ManifestError("unknown config key in manifest: " + key);
                }
            }
        }

        if (!j.count("movies") || !j["movies"].is_array() || j["movies"].empty()) {
            throw ManifestError("manifest lists no movies");
        }
        for (const auto& jm : j["movies"]) {
            ManifestMovie movie;
            movie.movie_id = jm.at("id").get<std::string>();
            movie.srt_path = resolve_path(manifest.base_dir, jm.at("srt").get<std::string>());
            movie.roster_id = jm.value("roster_id", movie.movie_id);
            movie.release_year = jm.value("year", 0);
            if (jm.count("genres")) movie.genres = jm["genres"].get<std::vector<std::string>>();
            movie.votes = jm.value("votes", static_cast<int64_t>(0));
            movie.ner_path = resolve_path(manifest.base_dir, jm.value("ner", std::string()));
            if (movie.movie_id.empty()) throw ManifestError("movie with empty id");
            manifest.movies.push_back(std::move(movie));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ManifestError(std::string("manifest field error: ") + e.what());
    }

    std::set<std::string> seen;
    for (const auto& movie : manifest.movies) {
        if (!seen.insert(movie.movie_id).second) {
            throw ManifestError("duplicate movie id: " + movie.movie_id);
        }
        require_exists(movie.srt_path, "subtitle file for " + movie.movie_id);
        if (!movie.ner_path.empty()) {
            require_exists(movie.ner_path, "entity file for " + movie.movie_id);
        }
    }
    require_exists(manifest.cast_path, "cast table");
    require_exists(manifest.gender_path, "gender table");
    if (!manifest.blacklist_path.empty()) require_exists(manifest.blacklist_path, "blacklist");
    if (!manifest.labels_path.empty()) require_exists(manifest.labels_path, "label table");
    if (!group_by_from_name(manifest.config.group_by)) {
        throw ManifestError("unknown group_by: " + manifest.config.group_by);
    }
    return manifest;
}

const char* stage_name(Stage stage) { return kStageNames[static_cast<size_t>(stage)]; }

std::optional<Stage> stage_from_name(const std::string& name) {
    for (size_t i = 0; i < kStageNames.size(); ++i) {
        if (name == kStageNames[i]) return static_cast<Stage>(i);
    }
    return std::nullopt;
}

std::set<Stage> parse_stage_list(const std::string& text) {
    std::set<Stage> stages;
    for (const std::string& raw : split(text, ',')) {
        const std::string name = trim(raw);
        if (name.empty()) continue;
        if (name == "all") {
            for (size_t i = 0; i < kStageNames.size(); ++i) stages.insert(static_cast<Stage>(i));
            continue;
        }
        const auto stage = stage_from_name(name);
        if (!stage) throw ManifestError("unknown stage: " + name);
        stages.insert(*stage);
    }
    if (stages.empty()) throw ManifestError("no stages requested");
    return stages;
}

const char* stage_status_name(StageStatus status) {
    switch (status) {
        case StageStatus::computed: return "computed";
        case StageStatus::cached: return "cached";
        case StageStatus::failed: return "failed";
        case StageStatus::skipped: return "skipped";
    }
    return "unknown";
}

bool MovieReport::failed() const {
    for (const auto& [stage, outcome] : stages) {
        if (outcome.status == StageStatus::failed) return true;
    }
    return false;
}

bool RunReport::any_failure() const {
    for (const auto& movie : movies) {
        if (movie.failed()) return true;
    }
    for (const auto& [stage, outcome] : corpus) {
        if (outcome.status == StageStatus::failed) return true;
    }
    return false;
}

std::string RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["ok"] = !any_failure();
    j["duration_ms"] = duration_ms;
    nlohmann::ordered_json movies_json = nlohmann::ordered_json::array();
    for (const auto& movie : movies) {
        nlohmann::ordered_json jm;
        jm["id"] = movie.movie_id;
        nlohmann::ordered_json stages_json;
        for (const auto& [stage, outcome] : movie.stages) {
            stages_json[stage_name(stage)] = stage_status_name(outcome.status);
            if (!outcome.error.empty()) {
                jm["errors"][stage_name(stage)] = outcome.error;
            }
        }
        jm["stages"] = std::move(stages_json);
        movies_json.push_back(std::move(jm));
    }
    j["movies"] = std::move(movies_json);
    nlohmann::ordered_json corpus_json;
    for (const auto& [stage, outcome] : corpus) {
        corpus_json[stage_name(stage)] = stage_status_name(outcome.status);
        if (!outcome.error.empty()) j["corpus_errors"][stage_name(stage)] = outcome.error;
    }
    j["corpus"] = std::move(corpus_json);
    return j.dump(2) + "\n";
}

namespace {

struct RunContext {
    const CorpusManifest* manifest = nullptr;
    const std::set<Stage>* requested = nullptr;
    fs::path cache_root;
    fs::path out_root;
    bool need_mentions = false;
    bool need_build = false;
    bool need_features = false;
    std::map<std::string, std::vector<RosterEntry>> rosters;  // by roster_id
    std::vector<RosterEntry> empty_roster;

    const std::vector<RosterEntry>& roster_for(const std::string& roster_id) const {
        const auto it = rosters.find(roster_id);
        return it == rosters.end() ? empty_roster : it->second;
    }
};

struct MovieSlot {
    const ManifestMovie* movie = nullptr;
    MovieReport report;
    bool build_ok = false;    // network available for corpus stages
    uint64_t h_build = 0;
    fs::path build_cache;     // network JSON location
};

// Deterministic serialization of the roster rows feeding one movie's
// matching; part of the mentions-stage cache key.
std::string roster_fingerprint(const std::vector<RosterEntry>& roster) {
    std::vector<std::string> rows;
    rows.reserve(roster.size());
    for (const auto& entry : roster) {
        rows.push_back(entry.character_name + "\t" + entry.actor_name + "\t" +
                       std::string(gender_name(entry.gender)) + "\t" +
                       std::to_string(entry.cast_order));
    }
    std::sort(rows.begin(), rows.end());
    std::string out;
    for (const auto& row : rows) {
        out += row;
        out += '\n';
    }
    return out;
}

void run_movie(MovieSlot& slot, const RunContext& ctx) {
    const ManifestMovie& m = *slot.movie;
    const std::set<Stage>& requested = *ctx.requested;
    auto& stages = slot.report.stages;
    const PipelineConfig& config = ctx.manifest->config;

    const fs::path cache_dir = ctx.cache_root / m.movie_id;
    const fs::path out_dir = ctx.out_root / "movies" / m.movie_id;
    const auto cache_file = [&](const char* stage, uint64_t h, const char* ext) {
        return cache_dir / (std::string(stage) + "-" + hex64(h) + "." + ext);
    };

    Stage current = Stage::parse;
    try {
        fs::create_directories(cache_dir);
        const bool any_artifact =
            requested.count(Stage::parse) || requested.count(Stage::mentions) ||
            requested.count(Stage::build) || requested.count(Stage::features);
        if (any_artifact) fs::create_directories(out_dir);

        // ---- parse ----------------------------------------------------
        const std::string srt_bytes = read_file(m.srt_path);
        const uint64_t h_parse = fnv1a64(srt_bytes);
        std::string doc_bytes;
        std::optional<SubtitleDocument> doc;
        {
            const fs::path file = cache_file("parse", h_parse, "json");
            if (fs::exists(file)) {
                doc_bytes = read_file(file.string());
                stages[Stage::parse] = {StageStatus::cached, ""};
            } else {
                doc = parse_srt(srt_bytes, m.movie_id);
                doc_bytes = document_to_json(*doc);
                write_file(file.string(), doc_bytes);
                stages[Stage::parse] = {StageStatus::computed, ""};
            }
        }
        if (requested.count(Stage::parse)) {
            write_file((out_dir / "document.json").string(), doc_bytes);
        }
        if (!ctx.need_mentions) return;
        const auto ensure_doc = [&]() -> const SubtitleDocument& {
            if (!doc) doc = document_from_json(doc_bytes);
            return *doc;
        };

        // ---- mentions -------------------------------------------------
        current = Stage::mentions;
        const std::vector<RosterEntry>& roster = ctx.roster_for(m.roster_id);
        std::string ner_bytes;
        if (!m.ner_path.empty()) ner_bytes = read_file(m.ner_path);
        uint64_t h_mentions = fnv1a64("threshold=" + std::to_string(config.threshold), h_parse);
        h_mentions = fnv1a64(roster_fingerprint(roster), h_mentions);
        h_mentions = fnv1a64(ner_bytes, h_mentions);
        std::string mention_bytes;
        std::optional<std::vector<Mention>> mentions;
        {
            const fs::path file = cache_file("mentions", h_mentions, "csv");
            if (fs::exists(file)) {
                mention_bytes = read_file(file.string());
                stages[Stage::mentions] = {StageStatus::cached, ""};
            } else {
                std::vector<ExternalEntity> external;
                if (!ner_bytes.empty()) external = parse_external_entities(ner_bytes);
                MentionScan scan =
                    find_mentions(ensure_doc(), roster, config.threshold,
                                  ner_bytes.empty() ? nullptr : &external);
                mentions = std::move(scan.mentions);
                mention_bytes = mentions_to_csv(*mentions);
                write_file(file.string(), mention_bytes);
                stages[Stage::mentions] = {StageStatus::computed, ""};
            }
        }
        if (requested.count(Stage::mentions)) {
            write_file((out_dir / "mentions.csv").string(), mention_bytes);
        }
        if (!ctx.need_build) return;
        const auto ensure_mentions = [&]() -> const std::vector<Mention>& {
            if (!mentions) mentions = mentions_from_csv(mention_bytes);
            return *mentions;
        };

        // ---- build ----------------------------------------------------
        current = Stage::build;
        const uint64_t h_build =
            fnv1a64("t=" + std::to_string(config.t_window_s) +
                        ";w_min=" + std::to_string(config.w_min),
                    h_mentions);
        std::string net_bytes, gexf_bytes;
        std::optional<MovieNetwork> net;
        {
            const fs::path file = cache_file("build", h_build, "json");
            const fs::path gexf_file = cache_file("build", h_build, "gexf");
            if (fs::exists(file) && fs::exists(gexf_file)) {
                net_bytes = read_file(file.string());
                gexf_bytes = read_file(gexf_file.string());
                stages[Stage::build] = {StageStatus::cached, ""};
            } else {
                net = build_network(ensure_mentions(), roster, config.t_window_s, config.w_min,
                                    m.movie_id);
                net_bytes = export_network(*net, ExportFormat::json);
                gexf_bytes = export_network(*net, ExportFormat::gexf);
                write_file(file.string(), net_bytes);
                write_file(gexf_file.string(), gexf_bytes);
                stages[Stage::build] = {StageStatus::computed, ""};
            }
            slot.h_build = h_build;
            slot.build_cache = file;
            slot.build_ok = true;
        }
        if (requested.count(Stage::build)) {
            write_file((out_dir / "network.json").string(), net_bytes);
            write_file((out_dir / "network.gexf").string(), gexf_bytes);
        }
        if (!ctx.need_features) return;
        const auto ensure_net = [&]() -> const MovieNetwork& {
            if (!net) net = network_from_json(net_bytes);
            return *net;
        };

        // ---- features -------------------------------------------------
        current = Stage::features;
        const uint64_t h_features = fnv1a64("features", h_build);
        std::string feature_bytes;
        {
            const fs::path file = cache_file("features", h_features, "csv");
            if (fs::exists(file)) {
                feature_bytes = read_file(file.string());
                stages[Stage::features] = {StageStatus::cached, ""};
            } else {
                feature_bytes = features_to_csv(ensure_net());
                write_file(file.string(), feature_bytes);
                stages[Stage::features] = {StageStatus::computed, ""};
            }
        }
        if (requested.count(Stage::features)) {
            write_file((out_dir / "features.csv").string(), feature_bytes);
        }
    } catch (const std::exception& e) {
        stages[current] = {StageStatus::failed, e.what()};
        slot.build_ok = false;
    }
}

struct CorpusInputs {
    // successful movies in movie_id order, with their cached network paths
    std::vector<const MovieSlot*> slots;
    uint64_t fingerprint = 0;  // covers build hashes and trend metadata
};

CorpusInputs collect_corpus_inputs(const std::vector<MovieSlot>& slots) {
    CorpusInputs inputs;
    for (const auto& slot : slots) {
        if (slot.build_ok) inputs.slots.push_back(&slot);
    }
    std::sort(inputs.slots.begin(), inputs.slots.end(),
              [](const MovieSlot* a, const MovieSlot* b) {
                  return a->movie->movie_id < b->movie->movie_id;
              });
    uint64_t h = fnv1a64("corpus");
    for (const MovieSlot* slot : inputs.slots) {
        const ManifestMovie& m = *slot->movie;
        std::string meta = m.movie_id + "|" + hex64(slot->h_build) + "|" +
                           std::to_string(m.release_year) + "|" + std::to_string(m.votes);
        for (const auto& genre : m.genres) meta += "|" + genre;
        h = fnv1a64(meta + "\n", h);
    }
    inputs.fingerprint = h;
    return inputs;
}

MovieNetwork load_cached_network(const MovieSlot& slot) {
    return network_from_json(read_file(slot.build_cache.string()));
}

void run_analyze(RunReport& report, const CorpusInputs& inputs, const RunContext& ctx) {
    const PipelineConfig& config = ctx.manifest->config;
    const fs::path analysis_dir = ctx.out_root / "analysis";
    fs::create_directories(analysis_dir);
    const fs::path corpus_cache = ctx.cache_root / "_corpus";
    fs::create_directories(corpus_cache);

    uint64_t h = fnv1a64("analyze;min_votes=" + std::to_string(config.min_votes) +
                             ";group_by=" + config.group_by,
                         inputs.fingerprint);
    const fs::path trends_cache = corpus_cache / ("analyze-" + hex64(h) + ".trends.csv");
    const fs::path movies_cache = corpus_cache / ("analyze-" + hex64(h) + ".movies.csv");

    std::string trends_bytes, movies_bytes;
    if (fs::exists(trends_cache) && fs::exists(movies_cache)) {
        trends_bytes = read_file(trends_cache.string());
        movies_bytes = read_file(movies_cache.string());
        report.corpus[Stage::analyze] = {StageStatus::cached, ""};
    } else {
        std::vector<TrendRecord> records;
        std::ostringstream movies_csv;
        movies_csv << "movie_id,release_year,votes,genres,vertex_count,edge_count,"
                      "female_count,male_count,unknown_count,females_in_top10,degree_ratio,"
                      "degree_ratio_pass,triangles_0_women,triangles_1_women,triangles_2_women,"
                      "triangles_3_women,pct_triangles_0_women,pct_triangles_1_women,"
                      "pct_triangles_2_women,pct_triangles_3_women,in_trends\n";
        for (const MovieSlot* slot : inputs.slots) {
            const ManifestMovie& m = *slot->movie;
            const MovieNetwork net = load_cached_network(*slot);
            const GenderSummary summary = gender_summary(net);
            const TriangleCensus census = triangle_census(net);
            const int64_t census_total =
                census.counts[0] + census.counts[1] + census.counts[2] + census.counts[3];
            const bool in_trends = m.votes >= config.min_votes;

            std::string genres;
            for (const auto& genre : m.genres) {
                if (!genres.empty()) genres += ";";
                genres += genre;
            }
            movies_csv << csv_escape(m.movie_id) << ',' << m.release_year << ',' << m.votes
                       << ',' << csv_escape(genres) << ',' << net.nodes.size() << ','
                       << net.edges.size() << ',' << summary.female_count << ','
                       << summary.male_count << ',' << summary.unknown_count << ','
                       << summary.females_in_top10 << ',';
            if (summary.degree_ratio.ratio) {
                movies_csv << format_double(*summary.degree_ratio.ratio);
            }
            movies_csv << ',' << (summary.degree_ratio.pass ? 1 : 0);
            for (int i = 0; i < 4; ++i) {
                movies_csv << ',' << census.counts[static_cast<size_t>(i)];
            }
            for (int i = 0; i < 4; ++i) {
                movies_csv << ',' << format_double(census.percents[static_cast<size_t>(i)]);
            }
            movies_csv << ',' << (in_trends ? 1 : 0) << '\n';

            if (!in_trends) continue;
            TrendRecord record;
            record.movie_id = m.movie_id;
            record.release_year = m.release_year;
            record.genres = m.genres;
            record.stats.emplace_back("vertex_count", static_cast<double>(net.nodes.size()));
            record.stats.emplace_back("edge_count", static_cast<double>(net.edges.size()));
            record.stats.emplace_back("females_in_top10",
                                      static_cast<double>(summary.females_in_top10));
            const int64_t known = summary.female_count + summary.male_count;
            if (known > 0) {
                record.stats.emplace_back("female_share",
                                          static_cast<double>(summary.female_count) /
                                              static_cast<double>(known));
            }
            if (summary.degree_ratio.ratio) {
                record.stats.emplace_back("degree_ratio", *summary.degree_ratio.ratio);
            }
            if (census_total > 0) {
                for (int i = 0; i < 4; ++i) {
                    record.stats.emplace_back(
                        "pct_triangles_" + std::to_string(i) + "_women",
                        census.percents[static_cast<size_t>(i)]);
                }
            }
            records.push_back(std::move(record));
        }
        const TrendTable table = corpus_trends(records, *group_by_from_name(config.group_by));
        trends_bytes = trends_to_csv(table);
        movies_bytes = movies_csv.str();
        write_file(trends_cache.string(), trends_bytes);
        write_file(movies_cache.string(), movies_bytes);
        report.corpus[Stage::analyze] = {StageStatus::computed, ""};
    }
    write_file((analysis_dir / "trends.csv").string(), trends_bytes);
    write_file((analysis_dir / "movies.csv").string(), movies_bytes);
}

void run_bechdel(RunReport& report, const CorpusInputs& inputs, const RunContext& ctx) {
    const CorpusManifest& manifest = *ctx.manifest;
    const PipelineConfig& config = manifest.config;
    if (manifest.labels_path.empty()) {
        report.corpus[Stage::bechdel] = {StageStatus::skipped, "no label table in manifest"};
        return;
    }
    const fs::path analysis_dir = ctx.out_root / "analysis";
    fs::create_directories(analysis_dir);
    const fs::path corpus_cache = ctx.cache_root / "_corpus";
    fs::create_directories(corpus_cache);

    const std::string label_bytes = read_file(manifest.labels_path);
    uint64_t h = fnv1a64("bechdel;holdout=" + std::to_string(config.holdout_newest) +
                             ";trees=" + std::to_string(config.tree_count) +
                             ";depth=" + std::to_string(config.max_depth) +
                             ";min_leaf=" + std::to_string(config.min_leaf) +
                             ";subsample=" + std::to_string(config.feature_subsample) +
                             ";seed=" + std::to_string(config.seed),
                         inputs.fingerprint);
    h = fnv1a64(label_bytes, h);
    const fs::path model_cache = corpus_cache / ("bechdel-" + hex64(h) + ".model.json");
    const fs::path eval_cache = corpus_cache / ("bechdel-" + hex64(h) + ".eval.json");
    const fs::path pred_cache = corpus_cache / ("bechdel-" + hex64(h) + ".predictions.csv");

    std::string model_bytes, eval_bytes, pred_bytes;
    if (fs::exists(model_cache) && fs::exists(eval_cache) && fs::exists(pred_cache)) {
        model_bytes = read_file(model_cache.string());
        eval_bytes = read_file(eval_cache.string());
        pred_bytes = read_file(pred_cache.string());
        report.corpus[Stage::bechdel] = {StageStatus::cached, ""};
    } else {
        std::map<std::string, int> ratings;
        for (const auto& label : load_bechdel_labels(manifest.labels_path)) {
            ratings[label.movie_id] = label.rating;
        }
        std::vector<LabeledMovie> dataset;
        std::vector<std::pair<std::string, FeatureVector>> all_features;
        for (const MovieSlot* slot : inputs.slots) {
            const MovieNetwork net = load_cached_network(*slot);
            FeatureVector features = assemble_features(net);
            all_features.emplace_back(slot->movie->movie_id, features);
            const auto it = ratings.find(slot->movie->movie_id);
            if (it == ratings.end()) continue;
            LabeledMovie labeled;
            labeled.movie_id = slot->movie->movie_id;
            labeled.release_year = slot->movie->release_year;
            labeled.features = std::move(features);
            labeled.raw_score = it->second;
            labeled.label = it->second == 3;
            dataset.push_back(std::move(labeled));
        }

        ForestParams params;
        params.tree_count = config.tree_count;
        params.max_depth = config.max_depth;
        params.min_leaf = config.min_leaf;
        params.feature_subsample = config.feature_subsample;
        params.seed = config.seed;

        try {
            const TrainTestSplit split = split_newest(dataset, config.holdout_newest);
            ForestModel model;
            nlohmann::ordered_json eval_json;
            if (split.train.size() >= 20 && !split.test.empty()) {
                model = train_forest(split.train, params);
                const EvalReport eval = evaluate(model, split.test);
                eval_json = nlohmann::ordered_json::parse(eval_report_to_json(eval));
                eval_json["holdout_newest"] = static_cast<int64_t>(split.test.size());
            } else {
                model = train_forest(dataset, params);
                eval_json["skipped"] =
                    "holdout split leaves too little training data; model trained on all " +
                    std::to_string(dataset.size()) + " labeled movies";
            }
            model_bytes = model_to_json(model);
            eval_bytes = eval_json.dump(2) + "\n";
            std::ostringstream preds;
            preds << "movie_id,probability,predicted,raw_score\n";
            for (const auto& [movie_id, features] : all_features) {
                const double p = predict_proba(model, features);
                preds << csv_escape(movie_id) << ',' << format_double(p) << ','
                      << (p >= 0.5 ? 1 : 0) << ',';
                const auto it = ratings.find(movie_id);
                if (it != ratings.end()) preds << it->second;
                preds << '\n';
            }
            pred_bytes = preds.str();
        } catch (const std::exception& e) {
            report.corpus[Stage::bechdel] = {StageStatus::failed, e.what()};
            return;
        }
        write_file(model_cache.string(), model_bytes);
        write_file(eval_cache.string(), eval_bytes);
        write_file(pred_cache.string(), pred_bytes);
        report.corpus[Stage::bechdel] = {StageStatus::computed, ""};
    }
    write_file((analysis_dir / "bechdel_model.json").string(), model_bytes);
    write_file((analysis_dir / "bechdel_eval.json").string(), eval_bytes);
    write_file((analysis_dir / "bechdel_predictions.csv").string(), pred_bytes);
}

}  // namespace

RunReport run_pipeline(const CorpusManifest& manifest, const std::set<Stage>& stages,
                       const RunOptions& options) {
    const auto started = std::chrono::steady_clock::now();

    RunContext ctx;
    ctx.manifest = &manifest;
    ctx.requested = &stages;
    ctx.out_root = options.out_dir;
    if (!options.cache_dir.empty()) {
        ctx.cache_root = options.cache_dir;
    } else if (const char* env = std::getenv("SUBS2NET_CACHE"); env && *env) {
        ctx.cache_root = env;
    } else {
        ctx.cache_root = ctx.out_root / ".cache";
    }
    const bool corpus_requested = stages.count(Stage::analyze) || stages.count(Stage::bechdel);
    ctx.need_features = stages.count(Stage::features) > 0;
    ctx.need_build = ctx.need_features || stages.count(Stage::build) || corpus_requested;
    ctx.need_mentions = ctx.need_build || stages.count(Stage::mentions);

    RosterLoad roster = load_roster(manifest.cast_path, manifest.gender_path);
    if (!manifest.blacklist_path.empty()) {
        const Blacklist bl = Blacklist::from_text(read_file(manifest.blacklist_path));
        roster.entries = filter_roster(std::move(roster.entries), bl);
    }
    for (auto& entry : roster.entries) {
        ctx.rosters[entry.movie_id].push_back(entry);
    }

    fs::create_directories(ctx.out_root);
    fs::create_directories(ctx.cache_root);

    std::vector<MovieSlot> slots(manifest.movies.size());
    for (size_t i = 0; i < manifest.movies.size(); ++i) {
        slots[i].movie = &manifest.movies[i];
        slots[i].report.movie_id = manifest.movies[i].movie_id;
    }

    const int jobs = std::max(1, options.jobs);
    if (jobs == 1 || slots.size() <= 1) {
        for (auto& slot : slots) run_movie(slot, ctx);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> workers;
        const size_t count = std::min<size_t>(static_cast<size_t>(jobs), slots.size());
        workers.reserve(count);
        for (size_t w = 0; w < count; ++w) {
            workers.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < slots.size(); i = next.fetch_add(1)) {
                    run_movie(slots[i], ctx);
                }
            });
        }
        for (auto& worker : workers) worker.join();
    }

    RunReport report;
    for (auto& slot : slots) report.movies.push_back(std::move(slot.report));

    if (corpus_requested) {
        const CorpusInputs inputs = collect_corpus_inputs(slots);
        if (stages.count(Stage::analyze)) {
            try {
                run_analyze(report, inputs, ctx);
            } catch (const std::exception& e) {
                report.corpus[Stage::analyze] = {StageStatus::failed, e.what()};
            }
        }
        if (stages.count(Stage::bechdel)) {
            try {
                run_bechdel(report, inputs, ctx);
            } catch (const std::exception& e) {
                report.corpus[Stage::bechdel] = {StageStatus::failed, e.what()};
            }
        }
    }

    report.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    write_file((ctx.out_root / "run_report.json").string(), report.to_json());
    return report;
}

}  // namespace subs2net
