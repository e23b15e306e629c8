#include "subs2net/mentions.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

#include "subs2net/error.hpp"
#include "subs2net/similarity.hpp"
#include "subs2net/text.hpp"

namespace subs2net {

std::string_view mention_source_name(MentionSource s) {
    switch (s) {
        case MentionSource::speaker_tag: return "speaker_tag";
        case MentionSource::name_match: return "name_match";
        default: return "external_ner";
    }
}

MentionSource mention_source_from_name(std::string_view name) {
    if (name == "speaker_tag") return MentionSource::speaker_tag;
    if (name == "external_ner") return MentionSource::external_ner;
    return MentionSource::name_match;
}

NameIndex build_name_index(const std::vector<RosterEntry>& roster) {
    NameIndex index;

    std::map<std::string, CharacterInfo> by_key;
    for (const RosterEntry& e : roster) {
        std::string key = normalize_name(e.character_name);
        if (key.empty()) continue;
        auto [it, inserted] = by_key.try_emplace(key);
        CharacterInfo& info = it->second;
        if (inserted) {
            info.key = key;
            info.display_name = e.character_name;
            info.actor_name = e.actor_name;
            info.gender = e.gender;
            info.cast_order = e.cast_order;
        } else {
            info.cast_order = std::min(info.cast_order, e.cast_order);
            if (info.gender == Gender::unknown) info.gender = e.gender;
        }
    }

    index.characters.reserve(by_key.size());
    for (auto& [key, info] : by_key) {
        int id = static_cast<int>(index.characters.size());
        index.by_full_name.emplace(key, id);
        for (const std::string& tok : name_tokens(key)) {
            std::vector<int>& owners = index.token_owners[tok];
            if (owners.empty() || owners.back() != id) owners.push_back(id);
        }
        index.characters.push_back(std::move(info));
    }
    return index;
}

std::optional<MatchResult> match_entity(std::string_view person_name, const NameIndex& index,
                                        int threshold) {
    const std::string norm = normalize_name(person_name);
    if (norm.empty()) return std::nullopt;

    if (auto it = index.by_full_name.find(norm); it != index.by_full_name.end()) {
        return MatchResult{it->second, 100, true};
    }

    std::vector<std::string> tokens = split(norm, ' ');
    std::vector<int> candidates;
    for (const std::string& tok : tokens) {
        auto it = index.token_owners.find(tok);
        if (it == index.token_owners.end()) continue;
        if (it->second.size() == 1) {
            // a token only one character owns pins the reference down
            return MatchResult{it->second[0], 100, true};
        }
        candidates.insert(candidates.end(), it->second.begin(), it->second.end());
    }
    if (candidates.empty()) return std::nullopt;
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    int best = -1, best_score = -1;
    for (int id : candidates) {
        const CharacterInfo& c = index.characters[static_cast<size_t>(id)];
        int score = similarity(norm, c.key);
        if (score > best_score) {
            best = id;
            best_score = score;
        } else if (score == best_score && best >= 0) {
            const CharacterInfo& incumbent = index.characters[static_cast<size_t>(best)];
            if (c.cast_order < incumbent.cast_order ||
                (c.cast_order == incumbent.cast_order && c.key < incumbent.key)) {
                best = id;
            }
        }
    }
    if (best_score < threshold) return std::nullopt;
    return MatchResult{best, best_score, false};
}

std::vector<ExternalEntity> parse_external_entities(std::string_view jsonl) {
    std::vector<ExternalEntity> out;
    for (const std::string& line : split(jsonl, '\n')) {
        std::string t = trim(line);
        if (t.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(t, nullptr, false);
        if (j.is_discarded() || !j.is_object()) continue;
        ExternalEntity e;
        e.cue_index = j.value("cue_index", -1);
        e.surface = j.value("surface", "");
        e.label = j.value("label", "");
        if (e.surface.empty() || e.cue_index < 0) continue;
        if (e.label != "PERSON" && e.label != "ORG") continue;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<ExternalEntity> load_external_entities(const std::string& path) {
    return parse_external_entities(read_file(path));
}

namespace {

bool starts_capitalized(const std::string& token) {
    return !token.empty() && token[0] >= 'A' && token[0] <= 'Z';
}

// Raw word tokens of a dialogue line: letters, digits, apostrophes and
// hyphens glue a token together, everything else separates.
std::vector<std::string> line_word_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : line) {
        bool word_char = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                         (c >= '0' && c <= '9') || c == '\'' || c == '-' || c >= 0x80;
        if (word_char) {
            cur.push_back(static_cast<char>(c));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

struct Candidate {
    int priority;  // 0 speaker tag, 1 external, 2 dialogue n-gram
    int score;
    int order;  // discovery order, breaks remaining ties
    MentionSource source;
    std::string surface;
};

void offer(std::map<int, Candidate>& slots, int character, Candidate cand) {
    auto it = slots.find(character);
    if (it == slots.end()) {
        slots.emplace(character, std::move(cand));
        return;
    }
    Candidate& cur = it->second;
    if (cand.priority < cur.priority ||
        (cand.priority == cur.priority &&
         (cand.score > cur.score || (cand.score == cur.score && cand.order < cur.order)))) {
        cur = std::move(cand);
    }
}

}  // namespace

MentionScan find_mentions(const SubtitleDocument& doc, const std::vector<RosterEntry>& roster,
                          int threshold, const std::vector<ExternalEntity>* external) {
    const NameIndex index = build_name_index(roster);
    MentionScan scan;

    // external entities grouped by the cue index they claim
    std::map<int, std::vector<const ExternalEntity*>> external_by_cue;
    if (external) {
        std::map<int, bool> known_index;
        for (const SubtitleCue& cue : doc.cues) known_index[cue.index] = true;
        for (const ExternalEntity& e : *external) {
            if (!known_index.count(e.cue_index)) {
                ++scan.external_skipped;
                continue;
            }
            external_by_cue[e.cue_index].push_back(&e);
        }
    }

    for (const SubtitleCue& cue : doc.cues) {
        std::map<int, Candidate> slots;  // character id -> best candidate
        int order = 0;

        for (const std::string& tag : cue.speaker_tags) {
            auto m = match_entity(tag, index, threshold);
            if (!m) {
                ++scan.unresolved;
                continue;
            }
            offer(slots, m->character,
                  Candidate{0, m->score, order++, MentionSource::speaker_tag, tag});
        }

        if (auto it = external_by_cue.find(cue.index); it != external_by_cue.end()) {
            for (const ExternalEntity* e : it->second) {
                auto m = match_entity(e->surface, index, threshold);
                if (!m) {
                    ++scan.unresolved;
                    continue;
                }
                offer(slots, m->character,
                      Candidate{1, m->score, order++, MentionSource::external_ner, e->surface});
            }
        }

        for (const std::string& line : cue.lines) {
            std::vector<std::string> words = line_word_tokens(line);
            size_t i = 0;
            while (i < words.size()) {
                if (!starts_capitalized(words[i])) {
                    ++i;
                    continue;
                }
                size_t run_end = i;
                while (run_end < words.size() && starts_capitalized(words[run_end])) ++run_end;

                for (size_t s = i; s < run_end; ++s) {
                    std::string gram;
                    for (size_t e = s; e < run_end && e - s < 4; ++e) {
                        if (e > s) gram.push_back(' ');
                        gram += words[e];
                        auto m = match_entity(gram, index, threshold);
                        if (m) {
                            offer(slots, m->character,
                                  Candidate{2, m->score, order++, MentionSource::name_match, gram});
                        } else {
                            // only n-grams that touch the index count as misses
                            for (const std::string& tok : name_tokens(gram)) {
                                if (index.token_owners.count(tok)) {
                                    ++scan.unresolved;
                                    break;
                                }
                            }
                        }
                    }
                }
                i = run_end;
            }
        }

        for (const auto& [character, cand] : slots) {  // keyed map = sorted by id = sorted by key
            Mention m;
            m.character_key = index.characters[static_cast<size_t>(character)].key;
            m.time_ms = cue.start_ms;
            m.source = cand.source;
            m.surface = cand.surface;
            m.score = cand.score;
            scan.mentions.push_back(std::move(m));
        }
    }
    return scan;
}

std::string mentions_to_csv(const std::vector<Mention>& mentions) {
    std::string out = "character,time_ms,source,surface,score\n";
    for (const Mention& m : mentions) {
        out += csv_escape(m.character_key);
        out += ',';
        out += std::to_string(m.time_ms);
        out += ',';
        out += mention_source_name(m.source);
        out += ',';
        out += csv_escape(m.surface);
        out += ',';
        out += std::to_string(m.score);
        out += '\n';
    }
    return out;
}

std::vector<Mention> mentions_from_csv(std::string_view csv_text) {
    std::vector<Mention> out;
    std::vector<std::string> lines = split(csv_text, '\n');
    for (size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        std::vector<std::string> row = parse_csv_line(lines[i]);
        if (row.size() < 5) continue;
        Mention m;
        m.character_key = row[0];
        m.time_ms = std::stoll(row[1]);
        m.source = mention_source_from_name(row[2]);
        m.surface = row[3];
        m.score = std::stoi(row[4]);
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace subs2net
