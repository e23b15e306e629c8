#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace subs2net {

std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);

// Canonical name form used everywhere names are compared: ASCII lowercase,
// punctuation other than apostrophes and hyphens becomes whitespace, runs of
// whitespace collapse to single spaces, ends trimmed. Bytes >= 0x80 pass
// through untouched (comparison is bytewise).
std::string normalize_name(std::string_view s);

// Tokens of normalize_name(s), split on spaces. Empty input -> empty vector.
std::vector<std::string> name_tokens(std::string_view s);

bool is_valid_utf8(std::string_view bytes);
std::string latin1_to_utf8(std::string_view bytes);

// UTF-8 passthrough (BOM stripped) with Latin-1 fallback for invalid UTF-8.
// Throws EncodingError when the payload contains NUL bytes (binary data).
std::string decode_text(std::string_view bytes);

uint64_t fnv1a64(std::string_view bytes, uint64_t seed = 1469598103934665603ull);
std::string hex64(uint64_t v);

// Shortest round-trip representation, locale independent. Integral values
// print without a trailing ".0" ("3" not "3.0").
std::string format_double(double v);

std::string csv_escape(std::string_view field);
std::vector<std::string> parse_csv_line(std::string_view line, char delim = ',');

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace subs2net
