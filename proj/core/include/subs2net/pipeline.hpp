#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace subs2net {

struct PipelineConfig {
    int t_window_s = 60;        // co-mention window, seconds
    int w_min = 2;              // minimum edge weight kept
    int threshold = 85;         // fuzzy match cut-off
    int min_votes = 1000;       // corpus filter for trend tables
    uint64_t seed = 42;
    std::string group_by = "decade,genre";
    int holdout_newest = 300;   // chronological test split size
    int tree_count = 200;
    int max_depth = 8;
    int min_leaf = 5;
    int feature_subsample = 0;  // 0 = sqrt of feature count
};

// "key=value" application; false for unknown keys, ManifestError for
// unparsable numbers.
bool apply_config_value(PipelineConfig& config, const std::string& key,
                        const std::string& value);
// key=value lines, blank lines and #-comments ignored. Unknown keys throw.
void apply_config_file(PipelineConfig& config, const std::string& path);
std::string config_to_text(const PipelineConfig& config);

struct ManifestMovie {
    std::string movie_id;
    std::string srt_path;
    std::string roster_id;  // cast-table id; defaults to movie_id
    int release_year = 0;
    std::vector<std::string> genres;
    int64_t votes = 0;
    std::string ner_path;  // optional external entity JSON-lines
};

struct CorpusManifest {
    std::vector<ManifestMovie> movies;
    PipelineConfig config;       // defaults overlaid with the manifest's block
    std::string cast_path;
    std::string gender_path;
    std::string blacklist_path;  // optional
    std::string labels_path;     // optional; enables the classifier stage
    std::string base_dir;        // directory the manifest lives in
};

// Parses and validates a manifest; relative paths resolve against the
// manifest's directory and referenced inputs must exist. Throws
// ManifestError.
CorpusManifest load_manifest(const std::string& path);

enum class Stage { parse, mentions, build, features, analyze, bechdel };

inline constexpr std::array<const char*, 6> kStageNames = {"parse",    "mentions", "build",
                                                           "features", "analyze",  "bechdel"};

const char* stage_name(Stage stage);
std::optional<Stage> stage_from_name(const std::string& name);
// Comma list, or "all". Throws ManifestError on unknown names.
std::set<Stage> parse_stage_list(const std::string& text);

enum class StageStatus { computed, cached, failed, skipped };
const char* stage_status_name(StageStatus status);

struct StageOutcome {
    StageStatus status = StageStatus::skipped;
    std::string error;
};

struct MovieReport {
    std::string movie_id;
    std::map<Stage, StageOutcome> stages;
    bool failed() const;
};

struct RunReport {
    std::vector<MovieReport> movies;       // manifest order
    std::map<Stage, StageOutcome> corpus;  // analyze / bechdel outcomes
    int64_t duration_ms = 0;
    bool any_failure() const;
    std::string to_json() const;
};

struct RunOptions {
    std::string out_dir = "out";
    // cache root priority: this field, then $SUBS2NET_CACHE, then
    // <out_dir>/.cache
    std::string cache_dir;
    int jobs = 1;
};

// Executes the requested stages over the corpus with per-movie
// content-addressed caching. A movie failure never stops the run; it is
// recorded and the movie drops out of corpus-level stages. Artifacts land
// under <out_dir>/movies/<id>/ and <out_dir>/analysis/, the report at
// <out_dir>/run_report.json.
RunReport run_pipeline(const CorpusManifest& manifest, const std::set<Stage>& stages,
                       const RunOptions& options);

}  // namespace subs2net
