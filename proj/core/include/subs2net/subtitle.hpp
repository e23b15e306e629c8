#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace subs2net {

struct SubtitleCue {
    int index = 0;
    int64_t start_ms = 0;
    int64_t end_ms = 0;
    std::vector<std::string> lines;         // dialogue only, markup and annotations removed
    std::vector<std::string> speaker_tags;  // "MORPHEUS" from "MORPHEUS: ..." prefixes
    std::vector<std::string> sound_cues;    // "PHONE RINGS" from "[PHONE RINGS]" annotations

    bool operator==(const SubtitleCue&) const = default;
};

struct SubtitleDocument {
    std::string movie_id;
    std::vector<SubtitleCue> cues;  // sorted by start_ms, ties by index
    bool hearing_impaired = false;  // any cue carries a speaker tag or sound cue
    int skipped_blocks = 0;         // malformed blocks dropped during parsing
};

struct HearingImpairedParts {
    std::vector<std::string> speaker_tags;
    std::vector<std::string> sound_cues;
    std::vector<std::string> cleaned_lines;
};

// Pulls speaker-tag prefixes and fully-uppercase bracketed annotations out of
// cue lines. Per line: annotations in [..] or (..) whose letters are all
// uppercase become sound cues and disappear from the text; an uppercase
// "NAME:" prefix (at least two capital letters, <= 41 chars) becomes a speaker
// tag; a leading "- " dialogue dash is dropped; whatever non-empty text is
// left stays as a cleaned line. Lowercase parentheticals are kept as dialogue.
HearingImpairedParts extract_hearing_impaired(const std::vector<std::string>& lines);

// Removes HTML-style markup tags (<i>, </font>, ...) from a line.
std::string strip_markup(std::string_view line);

// Parses SubRip text: blocks of "index / HH:MM:SS,mmm --> HH:MM:SS,mmm /
// text lines" separated by blank lines. Input bytes are decoded as UTF-8 with
// Latin-1 fallback; a UTF-8 BOM is tolerated. Malformed blocks are skipped
// and counted. Throws EmptyDocumentError when no block parses, EncodingError
// on binary payloads.
SubtitleDocument parse_srt(std::string_view raw_bytes, const std::string& movie_id);

// Canonical SubRip serialization of the parsed cues (index, times, cleaned
// lines). Re-parsing the output reproduces index/times/lines exactly.
std::string to_canonical_srt(const SubtitleDocument& doc);

std::string document_to_json(const SubtitleDocument& doc);
SubtitleDocument document_from_json(std::string_view json_text);

std::string format_srt_time(int64_t ms);

}  // namespace subs2net
