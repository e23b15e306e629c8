#include "subs2net/roster.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "subs2net/error.hpp"
#include "subs2net/text.hpp"

namespace subs2net {

std::string_view gender_name(Gender g) {
    switch (g) {
        case Gender::female: return "female";
        case Gender::male: return "male";
        default: return "unknown";
    }
}

Gender gender_from_name(std::string_view name) {
    if (name == "female") return Gender::female;
    if (name == "male") return Gender::male;
    return Gender::unknown;
}

void GenderTable::add(std::string_view first_name, Gender g, double probability) {
    table_[normalize_name(first_name)] = Row{g, probability};
}

Gender GenderTable::lookup(std::string_view first_name, double threshold) const {
    auto it = table_.find(normalize_name(first_name));
    if (it == table_.end()) return Gender::unknown;
    if (it->second.probability < threshold) return Gender::unknown;
    return it->second.gender;
}

namespace {

std::vector<std::string> text_lines(std::string_view text) {
    std::vector<std::string> lines = split(text, '\n');
    for (std::string& l : lines) {
        if (!l.empty() && l.back() == '\r') l.pop_back();
    }
    if (!lines.empty() && lines.front().size() >= 3 &&
        static_cast<unsigned char>(lines.front()[0]) == 0xEF) {
        lines.front().erase(0, 3);  // UTF-8 BOM
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

char sniff_delimiter(const std::string& header) {
    return header.find('\t') != std::string::npos ? '\t' : ',';
}

std::vector<std::string> parse_row(const std::string& line, char delim) {
    if (delim == '\t') return split(line, '\t');
    return parse_csv_line(line, ',');
}

// Header name -> column position; throws when a required column is absent.
std::map<std::string, size_t> column_map(const std::vector<std::string>& header,
                                         const std::vector<std::string>& required,
                                         const std::string& what) {
    std::map<std::string, size_t> cols;
    for (size_t i = 0; i < header.size(); ++i) {
        cols[to_lower_ascii(trim(header[i]))] = i;
    }
    for (const std::string& name : required) {
        if (!cols.count(name)) {
            throw MissingColumnError(what + " is missing required column '" + name + "'");
        }
    }
    return cols;
}

}  // namespace

GenderTable load_gender_table(const std::string& path) {
    GenderTable table;
    std::vector<std::string> lines = text_lines(read_file(path));
    if (lines.empty()) return table;
    char delim = sniff_delimiter(lines[0]);
    auto cols = column_map(parse_row(lines[0], delim), {"name", "gender", "probability"},
                           "gender table " + path);
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::vector<std::string> row = parse_row(lines[i], delim);
        if (row.size() < 3) continue;
        double p = 0.0;
        try {
            p = std::stod(row[cols["probability"]]);
        } catch (...) {
            continue;
        }
        table.add(row[cols["name"]], gender_from_name(to_lower_ascii(trim(row[cols["gender"]]))), p);
    }
    return table;
}

RosterLoad load_roster_text(std::string_view cast_text, const GenderTable& genders) {
    RosterLoad out;
    std::vector<std::string> lines = text_lines(cast_text);
    if (lines.empty()) return out;
    char delim = sniff_delimiter(lines[0]);
    auto cols = column_map(parse_row(lines[0], delim),
                           {"movie_id", "character", "actor", "category", "ordering"},
                           "cast table");

    std::set<std::tuple<std::string, std::string, std::string>> seen;
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::vector<std::string> row = parse_row(lines[i], delim);
        if (row.size() < 5) continue;

        RosterEntry e;
        e.movie_id = trim(row[cols["movie_id"]]);
        e.character_name = trim(row[cols["character"]]);
        e.actor_name = trim(row[cols["actor"]]);
        if (e.movie_id.empty() || e.character_name.empty()) continue;

        auto key = std::make_tuple(e.movie_id, e.actor_name, normalize_name(e.character_name));
        if (!seen.insert(key).second) {
            out.warnings.push_back("duplicate cast row kept-first: " + e.movie_id + " / " +
                                   e.actor_name + " / " + e.character_name);
            continue;
        }

        std::string category = to_lower_ascii(trim(row[cols["category"]]));
        if (category == "actress") {
            e.gender = Gender::female;
        } else if (category == "actor") {
            e.gender = Gender::male;
        } else {
            std::vector<std::string> actor_tokens = name_tokens(e.actor_name);
            e.gender = actor_tokens.empty() ? Gender::unknown : genders.lookup(actor_tokens[0]);
        }

        try {
            e.cast_order = std::max(1, std::stoi(row[cols["ordering"]]));
        } catch (...) {
            e.cast_order = 1;
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

RosterLoad load_roster(const std::string& cast_path, const std::string& gender_path) {
    GenderTable genders = load_gender_table(gender_path);
    return load_roster_text(read_file(cast_path), genders);
}

std::string reconcile_name(const std::string& a, const std::string& b) {
    return b.size() > a.size() ? b : a;
}

std::set<std::string> load_name_set(const std::string& path) {
    std::set<std::string> names;
    for (const std::string& line : text_lines(read_file(path))) {
        if (!line.empty() && line[0] == '#') continue;
        std::string n = normalize_name(line);
        if (!n.empty()) names.insert(std::move(n));
    }
    return names;
}

bool Blacklist::contains(std::string_view raw_name) const {
    return names_.count(normalize_name(raw_name)) > 0;
}

std::string Blacklist::to_text() const {
    std::string out;
    for (const std::string& n : names_) {
        out += n;
        out += '\n';
    }
    return out;
}

Blacklist Blacklist::from_text(std::string_view text) {
    Blacklist bl;
    for (const std::string& line : text_lines(text)) {
        std::string n = normalize_name(line);
        if (!n.empty()) bl.add(n);
    }
    return bl;
}

Blacklist build_blacklist(const std::vector<RosterEntry>& all_entries,
                          const std::set<std::string>& given_names,
                          const std::set<std::string>& surnames) {
    if (all_entries.empty()) throw EmptyCorpusError("blacklist construction needs a corpus");

    struct Instance {
        std::string name;  // normalized character name
        std::string actor;
        std::string movie_id;
        int cast_order;
    };

    // step 1: candidate pool is every (character, actor, movie) instance
    std::vector<Instance> pool;
    pool.reserve(all_entries.size());
    for (const RosterEntry& e : all_entries) {
        std::string norm = normalize_name(e.character_name);
        if (norm.empty()) continue;
        pool.push_back({std::move(norm), e.actor_name, e.movie_id, e.cast_order});
    }

    // step 2: a token that is a real given name or surname marks the
    // character as a plausible person, not a generic label
    std::erase_if(pool, [&](const Instance& in) {
        for (const std::string& tok : name_tokens(in.name)) {
            if (given_names.count(tok) || surnames.count(tok)) return true;
        }
        return false;
    });

    // step 3: same actor playing the same name across films is a recurring
    // role, remove those instances from candidacy
    std::map<std::pair<std::string, std::string>, std::set<std::string>> name_actor_movies;
    for (const Instance& in : pool) {
        name_actor_movies[{in.name, in.actor}].insert(in.movie_id);
    }
    std::erase_if(pool, [&](const Instance& in) {
        return name_actor_movies[{in.name, in.actor}].size() > 1;
    });

    // steps 4-5: aggregate the remaining instances per name
    struct NameStats {
        long order_sum = 0;
        long count = 0;
        std::set<std::string> movies;
    };
    std::map<std::string, NameStats> stats;
    for (const Instance& in : pool) {
        NameStats& s = stats[in.name];
        s.order_sum += in.cast_order;
        s.count += 1;
        s.movies.insert(in.movie_id);
    }

    Blacklist bl;
    for (const auto& [name, s] : stats) {
        double mean_order = static_cast<double>(s.order_sum) / static_cast<double>(s.count);
        if (mean_order <= 3.0) continue;     // step 4: prominent billing, keep
        if (s.movies.size() == 1) continue;  // step 5: one-off names are fine
        bl.add(name);                        // step 6
    }
    return bl;
}

std::vector<RosterEntry> filter_roster(std::vector<RosterEntry> entries, const Blacklist& bl) {
    std::erase_if(entries, [&](const RosterEntry& e) { return bl.contains(e.character_name); });
    return entries;
}

std::unordered_map<std::string, ActorRecord> load_actors(const std::string& path) {
    std::unordered_map<std::string, ActorRecord> out;
    std::vector<std::string> lines = text_lines(read_file(path));
    if (lines.empty()) return out;
    char delim = sniff_delimiter(lines[0]);
    auto cols = column_map(parse_row(lines[0], delim), {"actor", "birth_year"}, "actors table " + path);
    for (size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        std::vector<std::string> row = parse_row(lines[i], delim);
        if (row.size() < 2) continue;
        ActorRecord rec;
        rec.actor_name = trim(row[cols["actor"]]);
        if (rec.actor_name.empty()) continue;
        try {
            rec.birth_year = std::stoi(row[cols["birth_year"]]);
        } catch (...) {
        }
        if (auto it = cols.find("death_year"); it != cols.end() && it->second < row.size()) {
            try {
                rec.death_year = std::stoi(row[it->second]);
            } catch (...) {
            }
        }
        out[rec.actor_name] = std::move(rec);
    }
    return out;
}

}  // namespace subs2net
