#include "subs2net/subtitle.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>

#include <nlohmann/json.hpp>

#include "subs2net/error.hpp"
#include "subs2net/text.hpp"

namespace subs2net {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }

// "HH:MM:SS,mmm" -- hours may exceed two digits, comma or dot separator.
std::optional<int64_t> parse_time_field(const std::string& field) {
    size_t c1 = field.find(':');
    if (c1 == std::string::npos) return std::nullopt;
    size_t c2 = field.find(':', c1 + 1);
    if (c2 == std::string::npos) return std::nullopt;
    size_t sep = field.find_first_of(",.", c2 + 1);
    if (sep == std::string::npos) return std::nullopt;

    auto to_int = [](std::string_view sv, int64_t& out) {
        if (sv.empty()) return false;
        out = 0;
        for (char c : sv) {
            if (c < '0' || c > '9') return false;
            out = out * 10 + (c - '0');
        }
        return true;
    };

    int64_t h = 0, m = 0, sec = 0, ms = 0;
    std::string_view f = field;
    if (!to_int(f.substr(0, c1), h)) return std::nullopt;
    if (!to_int(f.substr(c1 + 1, c2 - c1 - 1), m)) return std::nullopt;
    if (!to_int(f.substr(c2 + 1, sep - c2 - 1), sec)) return std::nullopt;
    std::string_view frac = f.substr(sep + 1);
    if (frac.size() != 3 || !to_int(frac, ms)) return std::nullopt;
    if (m >= 60 || sec >= 60) return std::nullopt;
    return ((h * 60 + m) * 60 + sec) * 1000 + ms;
}

// "00:00:01,000 --> 00:00:02,500"
bool parse_time_line(const std::string& line, int64_t& start_ms, int64_t& end_ms) {
    size_t arrow = line.find("-->");
    if (arrow == std::string::npos) return false;
    auto start = parse_time_field(trim(line.substr(0, arrow)));
    auto end = parse_time_field(trim(line.substr(arrow + 3)));
    if (!start || !end) return false;
    start_ms = *start;
    end_ms = *end;
    return true;
}

bool parse_index_line(const std::string& line, int& index) {
    std::string t = trim(line);
    if (t.empty() || t.size() > 9) return false;
    int v = 0;
    for (char c : t) {
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    index = v;
    return true;
}

// Removes bracketed annotations whose letters are all uppercase; collects
// their contents. Unbalanced or lowercase-bearing spans are left in place.
std::string strip_annotations(const std::string& line, std::vector<std::string>& sound_cues) {
    std::string out;
    size_t i = 0;
    while (i < line.size()) {
        char open = line[i];
        if (open == '[' || open == '(') {
            char close = open == '[' ? ']' : ')';
            size_t end = line.find(close, i + 1);
            if (end != std::string::npos) {
                std::string_view inner(line.data() + i + 1, end - i - 1);
                bool has_alpha = false, has_lower = false;
                for (char c : inner) {
                    if (std::isalpha(static_cast<unsigned char>(c))) {
                        has_alpha = true;
                        if (std::islower(static_cast<unsigned char>(c))) has_lower = true;
                    }
                }
                if (has_alpha && !has_lower) {
                    std::string cue = trim(inner);
                    if (!cue.empty()) sound_cues.push_back(cue);
                    i = end + 1;
                    continue;
                }
            }
        }
        out.push_back(line[i]);
        ++i;
    }
    return out;
}

// Matches an uppercase speaker prefix "NAME:" at the start of the line:
// first char A-Z, then up to 40 more of [A-Z .'-], a colon, and at least two
// capital letters overall. Returns prefix length including the colon.
size_t speaker_tag_prefix(const std::string& line) {
    if (line.empty() || !is_upper(line[0])) return 0;
    size_t i = 1;
    int uppercase = 1;
    while (i < line.size() && i <= 41) {
        char c = line[i];
        if (c == ':') {
            if (i < 2 || uppercase < 2) return 0;  // need >= 2 chars and >= 2 capitals
            return i + 1;
        }
        if (is_upper(c)) {
            ++uppercase;
        } else if (c != ' ' && c != '.' && c != '\'' && c != '-') {
            return 0;
        }
        ++i;
    }
    return 0;
}

}  // namespace

std::string strip_markup(std::string_view line) {
    std::string out;
    out.reserve(line.size());
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '<') {
            size_t end = line.find('>', i + 1);
            if (end != std::string_view::npos) {
                i = end + 1;
                continue;
            }
        }
        out.push_back(line[i]);
        ++i;
    }
    return out;
}

HearingImpairedParts extract_hearing_impaired(const std::vector<std::string>& lines) {
    HearingImpairedParts parts;
    for (const std::string& raw : lines) {
        std::string line = trim(strip_annotations(raw, parts.sound_cues));
        size_t prefix = speaker_tag_prefix(line);
        if (prefix > 0) {
            std::string tag = trim(line.substr(0, prefix - 1));
            if (!tag.empty()) parts.speaker_tags.push_back(tag);
            line = trim(line.substr(prefix));
        }
        if (!line.empty() && line[0] == '-') {
            line = trim(line.substr(1));
        }
        if (!line.empty()) parts.cleaned_lines.push_back(line);
    }
    return parts;
}

SubtitleDocument parse_srt(std::string_view raw_bytes, const std::string& movie_id) {
    std::string text = decode_text(raw_bytes);

    SubtitleDocument doc;
    doc.movie_id = movie_id;

    std::vector<std::string> lines = split(text, '\n');
    for (std::string& l : lines) {
        if (!l.empty() && l.back() == '\r') l.pop_back();
    }

    size_t pos = 0;
    const size_t n = lines.size();
    while (pos < n) {
        while (pos < n && trim(lines[pos]).empty()) ++pos;
        if (pos >= n) break;

        size_t block_end = pos;
        while (block_end < n && !trim(lines[block_end]).empty()) ++block_end;

        SubtitleCue cue;
        bool ok = block_end - pos >= 2 && parse_index_line(lines[pos], cue.index) &&
                  parse_time_line(lines[pos + 1], cue.start_ms, cue.end_ms);
        if (ok) {
            std::vector<std::string> text_lines;
            for (size_t i = pos + 2; i < block_end; ++i) {
                text_lines.push_back(strip_markup(lines[i]));
            }
            HearingImpairedParts parts = extract_hearing_impaired(text_lines);
            cue.lines = std::move(parts.cleaned_lines);
            cue.speaker_tags = std::move(parts.speaker_tags);
            cue.sound_cues = std::move(parts.sound_cues);
            if (!cue.speaker_tags.empty() || !cue.sound_cues.empty()) {
                doc.hearing_impaired = true;
            }
            doc.cues.push_back(std::move(cue));
        } else {
            ++doc.skipped_blocks;
        }
        pos = block_end;
    }

    if (doc.cues.empty()) {
        throw EmptyDocumentError("no parseable subtitle blocks in " + movie_id);
    }

    std::stable_sort(doc.cues.begin(), doc.cues.end(), [](const SubtitleCue& a, const SubtitleCue& b) {
        if (a.start_ms != b.start_ms) return a.start_ms < b.start_ms;
        return a.index < b.index;
    });
    return doc;
}

std::string format_srt_time(int64_t ms) {
    int64_t h = ms / 3600000;
    int64_t m = (ms / 60000) % 60;
    int64_t s = (ms / 1000) % 60;
    int64_t frac = ms % 1000;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%02lld:%02lld:%02lld,%03lld", static_cast<long long>(h),
                  static_cast<long long>(m), static_cast<long long>(s),
                  static_cast<long long>(frac));
    return buf;
}

std::string to_canonical_srt(const SubtitleDocument& doc) {
    std::string out;
    for (const SubtitleCue& cue : doc.cues) {
        out += std::to_string(cue.index);
        out += '\n';
        out += format_srt_time(cue.start_ms);
        out += " --> ";
        out += format_srt_time(cue.end_ms);
        out += '\n';
        for (const std::string& l : cue.lines) {
            out += l;
            out += '\n';
        }
        out += '\n';
    }
    return out;
}

std::string document_to_json(const SubtitleDocument& doc) {
    nlohmann::ordered_json j;
    j["movie_id"] = doc.movie_id;
    j["hearing_impaired"] = doc.hearing_impaired;
    j["cues"] = nlohmann::ordered_json::array();
    for (const SubtitleCue& cue : doc.cues) {
        nlohmann::ordered_json c;
        c["index"] = cue.index;
        c["start_ms"] = cue.start_ms;
        c["end_ms"] = cue.end_ms;
        c["lines"] = cue.lines;
        c["speaker_tags"] = cue.speaker_tags;
        c["sound_cues"] = cue.sound_cues;
        j["cues"].push_back(std::move(c));
    }
    return j.dump(2) + "\n";
}

SubtitleDocument document_from_json(std::string_view json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    SubtitleDocument doc;
    doc.movie_id = j.at("movie_id").get<std::string>();
    doc.hearing_impaired = j.at("hearing_impaired").get<bool>();
    for (const auto& c : j.at("cues")) {
        SubtitleCue cue;
        cue.index = c.at("index").get<int>();
        cue.start_ms = c.at("start_ms").get<int64_t>();
        cue.end_ms = c.at("end_ms").get<int64_t>();
        cue.lines = c.at("lines").get<std::vector<std::string>>();
        cue.speaker_tags = c.at("speaker_tags").get<std::vector<std::string>>();
        cue.sound_cues = c.at("sound_cues").get<std::vector<std::string>>();
        doc.cues.push_back(std::move(cue));
    }
    return doc;
}

}  // namespace subs2net
