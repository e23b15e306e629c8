#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace subs2net {

enum class Gender { female, male, unknown };

std::string_view gender_name(Gender g);
Gender gender_from_name(std::string_view name);  // anything unrecognized -> unknown

struct RosterEntry {
    std::string movie_id;
    std::string character_name;
    std::string actor_name;
    Gender gender = Gender::unknown;
    int cast_order = 1;  // 1 = top billing
};

struct MovieRecord {
    std::string movie_id;
    std::string title;
    int release_year = 0;
    std::vector<std::string> genres;
    double rating = 0.0;
    long votes = 0;
    int runtime_min = 0;
};

struct ActorRecord {
    std::string actor_name;
    std::optional<int> birth_year;
    std::optional<int> death_year;
};

// First-name -> gender lookup table. Resolves only when the tabulated
// probability clears the threshold; everything else stays unknown.
class GenderTable {
public:
    void add(std::string_view first_name, Gender g, double probability);
    Gender lookup(std::string_view first_name, double threshold = 0.9) const;
    size_t size() const { return table_.size(); }

private:
    struct Row { Gender gender; double probability; };
    std::unordered_map<std::string, Row> table_;
};

// CSV with header columns name,gender,probability.
GenderTable load_gender_table(const std::string& path);

struct RosterLoad {
    std::vector<RosterEntry> entries;
    std::vector<std::string> warnings;
};

// Loads a delimited cast table (TSV or CSV, sniffed from the header line)
// with columns movie_id, character, actor, category, ordering. Gender comes
// from the category ("actress"/"actor") or, failing that, the actor's first
// name via the gender table. Duplicate (movie, actor, character) rows keep
// the first occurrence and produce a warning. Throws MissingColumnError.
RosterLoad load_roster(const std::string& cast_path, const std::string& gender_path);
RosterLoad load_roster_text(std::string_view cast_text, const GenderTable& genders);

// Longer name wins; equal lengths keep the first.
std::string reconcile_name(const std::string& a, const std::string& b);

// Newline-delimited name list, normalized on load. '#' comments tolerated.
std::set<std::string> load_name_set(const std::string& path);

class Blacklist {
public:
    void add(std::string_view name) { names_.insert(std::string(name)); }
    bool contains(std::string_view raw_name) const;
    const std::set<std::string>& names() const { return names_; }
    std::string to_text() const;
    static Blacklist from_text(std::string_view text);

private:
    std::set<std::string> names_;  // normalized forms
};

// Builds the generic-name blacklist from a whole corpus worth of roster
// entries: drop names carrying a known given name or surname token, drop
// (character, actor) pairs recurring across films, drop names whose mean
// billing position is 3.0 or better, drop names seen in only one movie;
// whatever remains is blacklisted. Throws EmptyCorpusError.
Blacklist build_blacklist(const std::vector<RosterEntry>& all_entries,
                          const std::set<std::string>& given_names,
                          const std::set<std::string>& surnames);

std::vector<RosterEntry> filter_roster(std::vector<RosterEntry> entries, const Blacklist& bl);

// TSV with header actor,birth_year,death_year; empty fields allowed.
std::unordered_map<std::string, ActorRecord> load_actors(const std::string& path);

}  // namespace subs2net
