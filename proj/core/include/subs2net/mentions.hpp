#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subs2net/roster.hpp"
#include "subs2net/subtitle.hpp"

namespace subs2net {

enum class MentionSource { speaker_tag, name_match, external_ner };

std::string_view mention_source_name(MentionSource s);
MentionSource mention_source_from_name(std::string_view name);

struct Mention {
    std::string character_key;  // normalized roster character name
    int64_t time_ms = 0;        // start time of the carrying cue
    MentionSource source = MentionSource::name_match;
    std::string surface;  // text as it appeared
    int score = 100;      // match confidence; 100 for exact or unique-token hits
};

struct CharacterInfo {
    std::string key;  // normalized character name
    std::string display_name;
    std::string actor_name;
    Gender gender = Gender::unknown;
    int cast_order = 1;  // best (lowest) billing across the character's rows
};

// Token and full-name lookup over one movie's roster. Characters are keyed
// by normalized name; every character is reachable through each of its
// name tokens.
struct NameIndex {
    std::vector<CharacterInfo> characters;  // sorted by key
    std::unordered_map<std::string, std::vector<int>> token_owners;
    std::unordered_map<std::string, int> by_full_name;
};

NameIndex build_name_index(const std::vector<RosterEntry>& roster);

struct MatchResult {
    int character = -1;  // index into NameIndex::characters
    int score = 0;
    bool exact = false;  // full-name or unique-token resolution
};

// Resolves a person reference against the index. An exact normalized
// full-name match or a token owned by exactly one character resolves
// immediately; otherwise the best-scoring character among all owners of the
// reference's tokens wins, provided it clears the threshold. Ties break by
// lower cast_order, then lexicographic key.
std::optional<MatchResult> match_entity(std::string_view person_name, const NameIndex& index,
                                        int threshold);

struct ExternalEntity {
    int cue_index = 0;  // SubRip cue index the entity was found in
    std::string surface;
    std::string label;  // PERSON or ORG survive loading
};

// JSON-lines file of {"cue_index": n, "surface": "...", "label": "..."};
// records with other labels are dropped here. Cue indexes are validated
// later, in find_mentions, where the document is known.
std::vector<ExternalEntity> load_external_entities(const std::string& path);
std::vector<ExternalEntity> parse_external_entities(std::string_view jsonl);

struct MentionScan {
    std::vector<Mention> mentions;  // cue order; within a cue, by character key
    int unresolved = 0;             // tags/entities/indexed n-grams that resolved to nothing
    int external_skipped = 0;       // external records with unknown cue indexes
};

// Finds character mentions in a parsed document: (a) speaker tags, (b)
// capitalized token n-grams (n <= 4) in dialogue lines, (c) optional
// external NER entities. One mention per (character, cue), detector
// priority a > c > b.
MentionScan find_mentions(const SubtitleDocument& doc, const std::vector<RosterEntry>& roster,
                          int threshold, const std::vector<ExternalEntity>* external = nullptr);

std::string mentions_to_csv(const std::vector<Mention>& mentions);
std::vector<Mention> mentions_from_csv(std::string_view csv_text);

}  // namespace subs2net
