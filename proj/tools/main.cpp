// subs2net command line: subtitle parsing, mention scanning, network
// construction, analysis, and the end-to-end corpus pipeline.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "subs2net/error.hpp"
#include "subs2net/evaluation.hpp"
#include "subs2net/features.hpp"
#include "subs2net/forest.hpp"
#include "subs2net/gender.hpp"
#include "subs2net/graph_metrics.hpp"
#include "subs2net/mentions.hpp"
#include "subs2net/network.hpp"
#include "subs2net/pipeline.hpp"
#include "subs2net/roster.hpp"
#include "subs2net/stats.hpp"
#include "subs2net/subtitle.hpp"
#include "subs2net/text.hpp"

namespace fs = std::filesystem;
using namespace subs2net;

namespace {

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
}

std::string default_id(const std::string& srt_path, const std::string& given) {
    if (!given.empty()) return given;
    return fs::path(srt_path).stem().string();
}

MovieNetwork load_network_file(const std::string& path) {
    const std::string ext = to_lower_ascii(fs::path(path).extension().string());
    const std::string bytes = read_file(path);
    if (ext == ".gexf") return import_gexf(bytes);
    if (ext == ".json") return network_from_json(bytes);
    throw UnsupportedFormatError("expected a .json or .gexf network file: " + path);
}

std::vector<RosterEntry> load_movie_roster(const std::string& cast_path,
                                           const std::string& gender_path,
                                           const std::string& blacklist_path,
                                           const std::string& roster_id) {
    RosterLoad load = load_roster(cast_path, gender_path);
    for (const auto& warning : load.warnings) std::cerr << "warning: " << warning << "\n";
    if (!blacklist_path.empty()) {
        load.entries =
            filter_roster(std::move(load.entries), Blacklist::from_text(read_file(blacklist_path)));
    }
    std::vector<RosterEntry> entries;
    for (auto& entry : load.entries) {
        if (entry.movie_id == roster_id) entries.push_back(std::move(entry));
    }
    return entries;
}

struct ConfigFlags {
    std::string config_file;
    std::vector<std::string> sets;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
    cmd->add_option("--config", flags.config_file, "key=value config file");
    cmd->add_option("--set", flags.sets, "config override, key=value (repeatable)");
}

void apply_config_flags(PipelineConfig& config, const ConfigFlags& flags) {
    if (!flags.config_file.empty()) apply_config_file(config, flags.config_file);
    for (const auto& kv : flags.sets) {
        const size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            throw ManifestError("--set expects key=value, got '" + kv + "'");
        }
        const std::string key = trim(kv.substr(0, eq));
        const std::string value = trim(kv.substr(eq + 1));
        if (!apply_config_value(config, key, value)) {
            throw ManifestError("unknown config key '" + key + "'");
        }
    }
}

// Shared plumbing for corpus commands: manifest + config overrides, then a
// pipeline run of the wanted stages.
struct CorpusFlags {
    std::string manifest_path;
    ConfigFlags config;
    std::string out_dir = "out";
    std::string cache_dir;
    int jobs = 1;
};

void add_corpus_flags(CLI::App* cmd, CorpusFlags& flags) {
    cmd->add_option("--corpus", flags.manifest_path, "corpus manifest JSON")->required();
    cmd->add_option("--out-dir", flags.out_dir, "artifact directory (default out)");
    cmd->add_option("--cache", flags.cache_dir, "cache directory (default $SUBS2NET_CACHE)");
    cmd->add_option("--jobs", flags.jobs, "parallel movie workers")->check(CLI::PositiveNumber);
    add_config_flags(cmd, flags.config);
}

struct CorpusRun {
    CorpusManifest manifest;
    RunReport report;
};

CorpusRun run_corpus(const CorpusFlags& flags, const std::set<Stage>& stages) {
    CorpusRun run{load_manifest(flags.manifest_path), {}};
    apply_config_flags(run.manifest.config, flags.config);
    RunOptions options;
    options.out_dir = flags.out_dir;
    options.cache_dir = flags.cache_dir;
    options.jobs = flags.jobs;
    run.report = run_pipeline(run.manifest, stages, options);
    for (const auto& movie : run.report.movies) {
        for (const auto& [stage, outcome] : movie.stages) {
            if (outcome.status == StageStatus::failed) {
                std::cerr << movie.movie_id << ": " << stage_name(stage)
                          << " failed: " << outcome.error << "\n";
            }
        }
    }
    for (const auto& [stage, outcome] : run.report.corpus) {
        if (outcome.status == StageStatus::failed) {
            std::cerr << stage_name(stage) << " failed: " << outcome.error << "\n";
        }
    }
    return run;
}

MovieNetwork network_artifact(const CorpusRun& run, const CorpusFlags& flags,
                              const std::string& movie_id) {
    const fs::path path = fs::path(flags.out_dir) / "movies" / movie_id / "network.json";
    if (!fs::exists(path)) {
        throw Error("no network artifact for movie '" + movie_id + "' (build failed?)");
    }
    return network_from_json(read_file(path.string()));
}

nlohmann::ordered_json census_json(const MovieNetwork& net) {
    const TriangleCensus census = triangle_census(net);
    nlohmann::ordered_json j;
    j["movie_id"] = net.movie_id;
    j["total"] = census.counts[0] + census.counts[1] + census.counts[2] + census.counts[3];
    j["counts"] = census.counts;
    j["percents"] = census.percents;
    j["unknown_excluded"] = census.unknown_excluded;
    return j;
}

int exit_code_for(const RunReport& report) { return report.any_failure() ? 1 : 0; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"movie subtitles -> character interaction networks"};
    app.require_subcommand(1);
    int exit_code = 0;

    // ---- parse ---------------------------------------------------------
    struct {
        std::string srt, id, out, format = "json";
    } parse_args;
    {
        auto* cmd = app.add_subcommand("parse", "parse one SubRip file");
        cmd->add_option("srt", parse_args.srt, "subtitle file")->required();
        cmd->add_option("--id", parse_args.id, "movie id (default: file stem)");
        cmd->add_option("--format", parse_args.format, "json or srt (canonical form)")
            ->check(CLI::IsMember({"json", "srt"}));
        cmd->add_option("--out", parse_args.out, "output path (default stdout)");
        cmd->callback([&] {
            const SubtitleDocument doc = parse_srt(
                read_file(parse_args.srt), default_id(parse_args.srt, parse_args.id));
            if (doc.skipped_blocks > 0) {
                std::cerr << "warning: skipped " << doc.skipped_blocks
                          << " malformed block(s)\n";
            }
            emit(parse_args.format == "srt" ? to_canonical_srt(doc) : document_to_json(doc),
                 parse_args.out);
        });
    }

    // ---- mentions ------------------------------------------------------
    struct {
        std::string srt, id, roster_id, cast, genders, blacklist, ner, out;
        int threshold = 85;
    } mention_args;
    {
        auto* cmd = app.add_subcommand("mentions", "scan one movie for character mentions");
        cmd->add_option("srt", mention_args.srt, "subtitle file")->required();
        cmd->add_option("--cast", mention_args.cast, "cast table (TSV/CSV)")->required();
        cmd->add_option("--genders", mention_args.genders, "first-name gender CSV")->required();
        cmd->add_option("--id", mention_args.id, "movie id (default: file stem)");
        cmd->add_option("--roster-id", mention_args.roster_id,
                        "cast-table movie id (default: --id)");
        cmd->add_option("--threshold", mention_args.threshold, "fuzzy match cut-off (0-100)");
        cmd->add_option("--blacklist", mention_args.blacklist, "generic-name blacklist file");
        cmd->add_option("--ner", mention_args.ner, "external entity JSON-lines file");
        cmd->add_option("--out", mention_args.out, "output CSV (default stdout)");
        cmd->callback([&] {
            const std::string id = default_id(mention_args.srt, mention_args.id);
            const std::string roster_id =
                mention_args.roster_id.empty() ? id : mention_args.roster_id;
            const auto roster = load_movie_roster(mention_args.cast, mention_args.genders,
                                                  mention_args.blacklist, roster_id);
            const SubtitleDocument doc = parse_srt(read_file(mention_args.srt), id);
            std::vector<ExternalEntity> external;
            if (!mention_args.ner.empty()) external = load_external_entities(mention_args.ner);
            const MentionScan scan =
                find_mentions(doc, roster, mention_args.threshold,
                              mention_args.ner.empty() ? nullptr : &external);
            emit(mentions_to_csv(scan.mentions), mention_args.out);
        });
    }

    // ---- build ---------------------------------------------------------
    struct {
        std::string srt, id, roster_id, cast, genders, blacklist, ner, out, format = "json";
        int threshold = 85, t_window = 60, w_min = 2;
    } build_args;
    {
        auto* cmd = app.add_subcommand("build", "build one movie's character network");
        cmd->add_option("srt", build_args.srt, "subtitle file")->required();
        cmd->add_option("--cast", build_args.cast, "cast table (TSV/CSV)")->required();
        cmd->add_option("--genders", build_args.genders, "first-name gender CSV")->required();
        cmd->add_option("--id", build_args.id, "movie id (default: file stem)");
        cmd->add_option("--roster-id", build_args.roster_id,
                        "cast-table movie id (default: --id)");
        cmd->add_option("--threshold", build_args.threshold, "fuzzy match cut-off (0-100)");
        cmd->add_option("--blacklist", build_args.blacklist, "generic-name blacklist file");
        cmd->add_option("--ner", build_args.ner, "external entity JSON-lines file");
        cmd->add_option("--t-window", build_args.t_window, "co-mention window, seconds");
        cmd->add_option("--w-min", build_args.w_min, "minimum edge weight kept");
        cmd->add_option("--format", build_args.format, "json, gexf, or csv")
            ->check(CLI::IsMember({"json", "gexf", "csv"}));
        cmd->add_option("--out", build_args.out, "output path (default stdout)");
        cmd->callback([&] {
            const std::string id = default_id(build_args.srt, build_args.id);
            const std::string roster_id =
                build_args.roster_id.empty() ? id : build_args.roster_id;
            const auto roster = load_movie_roster(build_args.cast, build_args.genders,
                                                  build_args.blacklist, roster_id);
            const SubtitleDocument doc = parse_srt(read_file(build_args.srt), id);
            std::vector<ExternalEntity> external;
            if (!build_args.ner.empty()) external = load_external_entities(build_args.ner);
            const MentionScan scan =
                find_mentions(doc, roster, build_args.threshold,
                              build_args.ner.empty() ? nullptr : &external);
            const MovieNetwork net = build_network(scan.mentions, roster, build_args.t_window,
                                                   build_args.w_min, id);
            emit(export_network(net, export_format_from_name(build_args.format)),
                 build_args.out);
        });
    }

    // ---- features ------------------------------------------------------
    struct {
        std::string network, out;
    } feature_args;
    {
        auto* cmd = app.add_subcommand("features", "vertex/network feature CSV for a network");
        cmd->add_option("network", feature_args.network, "network file (.json or .gexf)")
            ->required();
        cmd->add_option("--out", feature_args.out, "output CSV (default stdout)");
        cmd->callback([&] {
            emit(features_to_csv(load_network_file(feature_args.network)), feature_args.out);
        });
    }

    // ---- triangles -----------------------------------------------------
    struct {
        std::string network, out;
    } triangle_args;
    {
        auto* cmd = app.add_subcommand("triangles", "gendered triangle census for a network");
        cmd->add_option("network", triangle_args.network, "network file (.json or .gexf)")
            ->required();
        cmd->add_option("--out", triangle_args.out, "output path (default stdout)");
        cmd->callback([&] {
            emit(census_json(load_network_file(triangle_args.network)).dump(2) + "\n",
                 triangle_args.out);
        });
    }

    // ---- analyze -------------------------------------------------------
    struct {
        CorpusFlags corpus;
        std::string group_by, out;
        int min_votes = -1;
    } analyze_args;
    {
        auto* cmd = app.add_subcommand("analyze", "corpus trend tables and per-movie summary");
        add_corpus_flags(cmd, analyze_args.corpus);
        cmd->add_option("--group-by", analyze_args.group_by,
                        "year, decade, genre, or decade,genre");
        cmd->add_option("--min-votes", analyze_args.min_votes,
                        "vote floor for the trend table");
        cmd->add_option("--out", analyze_args.out, "also copy trends.csv here");
        cmd->callback([&] {
            if (!analyze_args.group_by.empty()) {
                analyze_args.corpus.config.sets.push_back("group_by=" + analyze_args.group_by);
            }
            if (analyze_args.min_votes >= 0) {
                analyze_args.corpus.config.sets.push_back(
                    "min_votes=" + std::to_string(analyze_args.min_votes));
            }
            const CorpusRun run = run_corpus(analyze_args.corpus, {Stage::analyze});
            const fs::path trends =
                fs::path(analyze_args.corpus.out_dir) / "analysis" / "trends.csv";
            if (!analyze_args.out.empty() && fs::exists(trends)) {
                write_file(analyze_args.out, read_file(trends.string()));
            }
            exit_code = exit_code_for(run.report);
        });
    }

    // ---- mwu -----------------------------------------------------------
    struct {
        CorpusFlags corpus;
        std::string feature = "closeness", by = "gender", genre, out;
        int min_votes = -1;
    } mwu_args;
    {
        auto* cmd = app.add_subcommand(
            "mwu", "Mann-Whitney U comparison of a vertex feature between genders");
        add_corpus_flags(cmd, mwu_args.corpus);
        cmd->add_option("--feature", mwu_args.feature, "vertex metric name")->required();
        cmd->add_option("--by", mwu_args.by, "grouping variable (only 'gender')")
            ->check(CLI::IsMember({"gender"}));
        cmd->add_option("--genre", mwu_args.genre, "restrict to movies with this genre");
        cmd->add_option("--min-votes", mwu_args.min_votes, "vote floor (default from config)");
        cmd->add_option("--out", mwu_args.out, "output path (default stdout)");
        cmd->callback([&] {
            const auto metric = rank_metric_from_name(mwu_args.feature);
            if (!metric) {
                throw ManifestError("unknown vertex metric '" + mwu_args.feature + "'");
            }
            const CorpusRun run = run_corpus(mwu_args.corpus, {Stage::build});
            const int min_votes = mwu_args.min_votes >= 0 ? mwu_args.min_votes
                                                          : run.manifest.config.min_votes;
            std::vector<double> female, male;
            int movies_used = 0;
            for (const auto& movie : run.manifest.movies) {
                if (movie.votes < min_votes) continue;
                if (!mwu_args.genre.empty() &&
                    std::find(movie.genres.begin(), movie.genres.end(), mwu_args.genre) ==
                        movie.genres.end()) {
                    continue;
                }
                const fs::path path = fs::path(mwu_args.corpus.out_dir) / "movies" /
                                      movie.movie_id / "network.json";
                if (!fs::exists(path)) continue;  // failed movie
                const MovieNetwork net = network_from_json(read_file(path.string()));
                const auto rows = compute_vertex_features(net);
                ++movies_used;
                for (const auto& [key, row] : rows) {
                    const double value = row.metric(static_cast<size_t>(*metric));
                    const auto node = net.nodes.find(key);
                    if (node == net.nodes.end()) continue;
                    if (node->second.gender == Gender::female) female.push_back(value);
                    else if (node->second.gender == Gender::male) male.push_back(value);
                }
            }
            const MwuResult result = mann_whitney_u(female, male);
            nlohmann::ordered_json j;
            j["feature"] = mwu_args.feature;
            if (!mwu_args.genre.empty()) j["genre"] = mwu_args.genre;
            j["movies"] = movies_used;
            j["n_female"] = female.size();
            j["n_male"] = male.size();
            j["u_female"] = result.u;
            j["p_two_sided"] = result.p_two_sided;
            j["exact"] = result.exact;
            emit(j.dump(2) + "\n", mwu_args.out);
            exit_code = exit_code_for(run.report);
        });
    }

    // ---- bechdel -------------------------------------------------------
    auto* bechdel = app.add_subcommand("bechdel", "train/apply the Bechdel-test classifier");
    bechdel->require_subcommand(1);
    struct {
        CorpusFlags corpus;
        std::string labels, model;
        int holdout = -1;
    } train_args;
    {
        auto* cmd = bechdel->add_subcommand("train", "train on labeled corpus movies");
        add_corpus_flags(cmd, train_args.corpus);
        cmd->add_option("--labels", train_args.labels,
                        "label CSV movie_id,rating (overrides manifest)");
        cmd->add_option("--model", train_args.model, "model output path")->required();
        cmd->add_option("--holdout-newest", train_args.holdout,
                        "chronological test-set size");
        cmd->callback([&] {
            if (train_args.holdout >= 0) {
                train_args.corpus.config.sets.push_back(
                    "holdout_newest=" + std::to_string(train_args.holdout));
            }
            CorpusManifest manifest = load_manifest(train_args.corpus.manifest_path);
            apply_config_flags(manifest.config, train_args.corpus.config);
            if (!train_args.labels.empty()) manifest.labels_path = train_args.labels;
            if (manifest.labels_path.empty()) {
                throw ManifestError("no labels: pass --labels or set one in the manifest");
            }
            RunOptions options;
            options.out_dir = train_args.corpus.out_dir;
            options.cache_dir = train_args.corpus.cache_dir;
            options.jobs = train_args.corpus.jobs;
            const RunReport report = run_pipeline(manifest, {Stage::bechdel}, options);
            const auto outcome = report.corpus.find(Stage::bechdel);
            if (outcome == report.corpus.end() ||
                outcome->second.status == StageStatus::failed ||
                outcome->second.status == StageStatus::skipped) {
                throw Error("training failed: " +
                            (outcome != report.corpus.end() ? outcome->second.error
                                                            : std::string("stage missing")));
            }
            const fs::path analysis = fs::path(train_args.corpus.out_dir) / "analysis";
            write_file(train_args.model, read_file((analysis / "bechdel_model.json").string()));
            std::cout << read_file((analysis / "bechdel_eval.json").string());
            exit_code = exit_code_for(report);
        });
    }
    struct {
        CorpusFlags corpus;
        std::string model, out;
    } predict_args;
    {
        auto* cmd = bechdel->add_subcommand("predict", "score corpus movies with a model");
        add_corpus_flags(cmd, predict_args.corpus);
        cmd->add_option("--model", predict_args.model, "trained model JSON")->required();
        cmd->add_option("--out", predict_args.out, "output CSV (default stdout)");
        cmd->callback([&] {
            const ForestModel model = model_from_json(read_file(predict_args.model));
            const CorpusRun run = run_corpus(predict_args.corpus, {Stage::build});
            std::string csv = "movie_id,probability,predicted\n";
            for (const auto& movie : run.manifest.movies) {
                const fs::path path = fs::path(predict_args.corpus.out_dir) / "movies" /
                                      movie.movie_id / "network.json";
                if (!fs::exists(path)) continue;
                const MovieNetwork net = network_from_json(read_file(path.string()));
                const double p = predict_proba(model, assemble_features(net));
                csv += csv_escape(movie.movie_id) + "," + format_double(p) + "," +
                       (p >= 0.5 ? "1" : "0") + "\n";
            }
            emit(csv, predict_args.out);
            exit_code = exit_code_for(run.report);
        });
    }
    struct {
        CorpusFlags corpus;
        std::string model, labels, out;
        int p_at = 0;
    } eval_args;
    {
        auto* cmd = bechdel->add_subcommand("eval", "evaluate a model against labels");
        add_corpus_flags(cmd, eval_args.corpus);
        cmd->add_option("--model", eval_args.model, "trained model JSON")->required();
        cmd->add_option("--labels", eval_args.labels,
                        "label CSV movie_id,rating (overrides manifest)");
        cmd->add_option("--p-at", eval_args.p_at, "also report precision at k");
        cmd->add_option("--out", eval_args.out, "output path (default stdout)");
        cmd->callback([&] {
            const ForestModel model = model_from_json(read_file(eval_args.model));
            CorpusManifest manifest = load_manifest(eval_args.corpus.manifest_path);
            apply_config_flags(manifest.config, eval_args.corpus.config);
            if (!eval_args.labels.empty()) manifest.labels_path = eval_args.labels;
            if (manifest.labels_path.empty()) {
                throw ManifestError("no labels: pass --labels or set one in the manifest");
            }
            RunOptions options;
            options.out_dir = eval_args.corpus.out_dir;
            options.cache_dir = eval_args.corpus.cache_dir;
            options.jobs = eval_args.corpus.jobs;
            const RunReport report = run_pipeline(manifest, {Stage::build}, options);
            std::map<std::string, int> ratings;
            for (const auto& label : load_bechdel_labels(manifest.labels_path)) {
                ratings[label.movie_id] = label.rating;
            }
            std::vector<LabeledMovie> test;
            for (const auto& movie : manifest.movies) {
                const auto it = ratings.find(movie.movie_id);
                if (it == ratings.end()) continue;
                const fs::path path = fs::path(eval_args.corpus.out_dir) / "movies" /
                                      movie.movie_id / "network.json";
                if (!fs::exists(path)) continue;
                LabeledMovie labeled;
                labeled.movie_id = movie.movie_id;
                labeled.release_year = movie.release_year;
                labeled.features =
                    assemble_features(network_from_json(read_file(path.string())));
                labeled.raw_score = it->second;
                labeled.label = it->second == 3;
                test.push_back(std::move(labeled));
            }
            const EvalReport eval = evaluate(model, test);
            nlohmann::ordered_json j = nlohmann::ordered_json::parse(eval_report_to_json(eval));
            if (eval_args.p_at > 0) {
                j["p_at_k"] = {{"k", eval_args.p_at},
                               {"precision", precision_at_k(model, test, eval_args.p_at)}};
            }
            emit(j.dump(2) + "\n", eval_args.out);
            exit_code = exit_code_for(report);
        });
    }

    // ---- compare -------------------------------------------------------
    struct {
        std::string a, b, mode = "exact", out;
        int threshold = 85;
    } compare_args;
    {
        auto* cmd = app.add_subcommand("compare", "edge coverage between two networks");
        cmd->add_option("--a", compare_args.a, "first network (.json/.gexf)")->required();
        cmd->add_option("--b", compare_args.b, "second network (.json/.gexf)")->required();
        cmd->add_option("--mode", compare_args.mode, "name alignment: exact or fuzzy")
            ->check(CLI::IsMember({"exact", "fuzzy"}));
        cmd->add_option("--threshold", compare_args.threshold, "fuzzy alignment cut-off");
        cmd->add_option("--out", compare_args.out, "output path (default stdout)");
        cmd->callback([&] {
            const CoverageReport report = edge_coverage(
                load_network_file(compare_args.a), load_network_file(compare_args.b),
                compare_args.mode == "fuzzy" ? AlignMode::fuzzy : AlignMode::exact,
                compare_args.threshold);
            emit(coverage_to_json(report), compare_args.out);
        });
    }

    // ---- rank-eval -----------------------------------------------------
    struct {
        CorpusFlags corpus;
        std::string movie_id, reference = "cast", reference_file, metric = "degree_centrality";
        std::string ks = "5,10", mode = "exact", out;
        int threshold = 85;
    } rank_args;
    {
        auto* cmd = app.add_subcommand("rank-eval",
                                       "top-k central characters vs a reference ranking");
        cmd->add_option("movie_id", rank_args.movie_id, "movie to evaluate")->required();
        add_corpus_flags(cmd, rank_args.corpus);
        cmd->add_option("--reference", rank_args.reference, "'cast' or 'file'")
            ->check(CLI::IsMember({"cast", "file"}));
        cmd->add_option("--reference-file", rank_args.reference_file,
                        "name list, one per line (with --reference file)");
        cmd->add_option("--metric", rank_args.metric, "ranking metric");
        cmd->add_option("--k", rank_args.ks, "comma list of cut-offs");
        cmd->add_option("--mode", rank_args.mode, "name alignment: exact or fuzzy")
            ->check(CLI::IsMember({"exact", "fuzzy"}));
        cmd->add_option("--threshold", rank_args.threshold, "fuzzy alignment cut-off");
        cmd->add_option("--out", rank_args.out, "output path (default stdout)");
        cmd->callback([&] {
            const auto metric = rank_metric_from_name(rank_args.metric);
            if (!metric) throw ManifestError("unknown vertex metric '" + rank_args.metric + "'");
            const CorpusRun run = run_corpus(rank_args.corpus, {Stage::build});
            const MovieNetwork net = network_artifact(run, rank_args.corpus, rank_args.movie_id);

            std::vector<std::string> reference;
            if (rank_args.reference == "file") {
                if (rank_args.reference_file.empty()) {
                    throw ManifestError("--reference file needs --reference-file");
                }
                for (const std::string& raw : split(read_file(rank_args.reference_file), '\n')) {
                    const std::string name = trim(raw);
                    if (!name.empty() && name[0] != '#') reference.push_back(name);
                }
            } else {
                // billing order from the cast table
                std::string roster_id = rank_args.movie_id;
                for (const auto& movie : run.manifest.movies) {
                    if (movie.movie_id == rank_args.movie_id) roster_id = movie.roster_id;
                }
                RosterLoad roster = load_roster(run.manifest.cast_path, run.manifest.gender_path);
                std::vector<RosterEntry> entries;
                for (auto& entry : roster.entries) {
                    if (entry.movie_id == roster_id) entries.push_back(std::move(entry));
                }
                std::sort(entries.begin(), entries.end(),
                          [](const RosterEntry& a, const RosterEntry& b) {
                              if (a.cast_order != b.cast_order) return a.cast_order < b.cast_order;
                              return a.character_name < b.character_name;
                          });
                std::set<std::string> seen;
                for (const auto& entry : entries) {
                    if (seen.insert(normalize_name(entry.character_name)).second) {
                        reference.push_back(entry.character_name);
                    }
                }
            }

            const AlignMode mode =
                rank_args.mode == "fuzzy" ? AlignMode::fuzzy : AlignMode::exact;
            nlohmann::ordered_json j;
            j["movie_id"] = rank_args.movie_id;
            j["metric"] = rank_args.metric;
            j["reference_size"] = reference.size();
            nlohmann::ordered_json overlaps;
            for (const std::string& raw : split(rank_args.ks, ',')) {
                const std::string token = trim(raw);
                if (token.empty()) continue;
                int k = 0;
                try {
                    k = std::stoi(token);
                } catch (const std::exception&) {
                    throw ManifestError("--k expects numbers, got '" + token + "'");
                }
                if (k < 1 || static_cast<size_t>(k) > reference.size()) {
                    overlaps[token] = nullptr;  // reference too short for this k
                } else {
                    overlaps[token] =
                        top_k_overlap(net, reference, k, *metric, mode, rank_args.threshold);
                }
            }
            j["overlap"] = std::move(overlaps);
            emit(j.dump(2) + "\n", rank_args.out);
            exit_code = exit_code_for(run.report);
        });
    }

    // ---- blacklist -----------------------------------------------------
    auto* blacklist = app.add_subcommand("blacklist", "generic-name blacklist tools");
    blacklist->require_subcommand(1);
    struct {
        std::string cast, genders, given_names, surnames, out;
    } bl_args;
    {
        auto* cmd = blacklist->add_subcommand("build", "derive the blacklist from a cast table");
        cmd->add_option("--cast", bl_args.cast, "cast table (TSV/CSV)")->required();
        cmd->add_option("--genders", bl_args.genders, "first-name gender CSV")->required();
        cmd->add_option("--given-names", bl_args.given_names, "known given names, one per line")
            ->required();
        cmd->add_option("--surnames", bl_args.surnames, "known surnames, one per line")
            ->required();
        cmd->add_option("--out", bl_args.out, "output path (default stdout)");
        cmd->callback([&] {
            const RosterLoad roster = load_roster(bl_args.cast, bl_args.genders);
            const Blacklist result =
                build_blacklist(roster.entries, load_name_set(bl_args.given_names),
                                load_name_set(bl_args.surnames));
            emit(result.to_text(), bl_args.out);
            if (!bl_args.out.empty()) {
                std::cout << result.names().size() << " blacklisted name(s) -> " << bl_args.out
                          << "\n";
            }
        });
    }

    // ---- run -----------------------------------------------------------
    struct {
        CorpusFlags corpus;
        std::string stages = "all";
    } run_args;
    {
        auto* cmd = app.add_subcommand("run", "run pipeline stages over a corpus");
        add_corpus_flags(cmd, run_args.corpus);
        cmd->add_option("--stages", run_args.stages,
                        "comma list of parse,mentions,build,features,analyze,bechdel or 'all'");
        cmd->callback([&] {
            const CorpusRun run = run_corpus(run_args.corpus, parse_stage_list(run_args.stages));
            for (const auto& movie : run.report.movies) {
                std::cout << movie.movie_id << ":";
                for (const auto& [stage, outcome] : movie.stages) {
                    std::cout << ' ' << stage_name(stage) << '='
                              << stage_status_name(outcome.status);
                }
                std::cout << '\n';
            }
            for (const auto& [stage, outcome] : run.report.corpus) {
                std::cout << stage_name(stage) << '=' << stage_status_name(outcome.status)
                          << '\n';
            }
            std::cout << run.report.movies.size() << " movie(s), "
                      << (run.report.any_failure() ? "with failures" : "no failures") << ", "
                      << run.report.duration_ms << " ms\n";
            exit_code = exit_code_for(run.report);
        });
    }

    // ---- config --------------------------------------------------------
    auto* config_cmd = app.add_subcommand("config", "configuration helpers");
    config_cmd->require_subcommand(1);
    struct {
        std::string manifest_path;
        ConfigFlags flags;
    } show_args;
    {
        auto* cmd = config_cmd->add_subcommand("show", "print the effective configuration");
        cmd->add_option("--corpus", show_args.manifest_path, "corpus manifest JSON");
        add_config_flags(cmd, show_args.flags);
        cmd->callback([&] {
            PipelineConfig config;
            if (!show_args.manifest_path.empty()) {
                config = load_manifest(show_args.manifest_path).config;
            }
            apply_config_flags(config, show_args.flags);
            std::cout << config_to_text(config);
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ManifestError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const KTooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
