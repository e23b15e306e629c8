#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "subs2net/error.hpp"
#include "subs2net/roster.hpp"

using namespace subs2net;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path.string();
}

GenderTable table_with(std::initializer_list<std::tuple<const char*, Gender, double>> rows) {
    GenderTable t;
    for (const auto& [name, g, p] : rows) t.add(name, g, p);
    return t;
}

}  // namespace

TEST_CASE("gender table lookup respects the probability threshold") {
    GenderTable t = table_with({{"greta", Gender::female, 0.97},
                                {"alex", Gender::male, 0.55}});
    CHECK(t.lookup("greta") == Gender::female);
    CHECK(t.lookup("Greta") == Gender::female);
    CHECK(t.lookup("alex") == Gender::unknown);        // below default 0.9
    CHECK(t.lookup("alex", 0.5) == Gender::male);
    CHECK(t.lookup("nobody") == Gender::unknown);
}

TEST_CASE("load_roster_text reads TSV and applies category then name fallback") {
    const char* cast =
        "movie_id\tcharacter\tactor\tcategory\tordering\n"
        "m1\tJane Doe\tGreta Lind\t\t1\n"
        "m1\tJohn Roe\tSam Hill\tactor\t2\n"
        "m1\tMs Smith\tPat Doe\t\t3\n";
    GenderTable t = table_with({{"greta", Gender::female, 0.97}});
    RosterLoad load = load_roster_text(cast, t);
    REQUIRE(load.entries.size() == 3);
    CHECK(load.entries[0].gender == Gender::female);   // via first-name table
    CHECK(load.entries[1].gender == Gender::male);     // via category
    CHECK(load.entries[2].gender == Gender::unknown);  // no category, unknown name
    CHECK(load.entries[0].cast_order == 1);
}

TEST_CASE("load_roster_text reads CSV with quoted fields") {
    const char* cast =
        "movie_id,character,actor,category,ordering\n"
        "m1,\"Corleone, Don Vito\",Arthur Penn,actor,1\n";
    RosterLoad load = load_roster_text(cast, GenderTable{});
    REQUIRE(load.entries.size() == 1);
    CHECK(load.entries[0].character_name == "Corleone, Don Vito");
}

TEST_CASE("duplicate cast rows keep the first and warn") {
    const char* cast =
        "movie_id\tcharacter\tactor\tcategory\tordering\n"
        "m1\tNeo\tTrent Mills\tactor\t2\n"
        "m1\tNEO!\tTrent Mills\tactor\t9\n"   // same normalized character + actor
        "m2\tNeo\tTrent Mills\tactor\t1\n";   // other movie: kept
    RosterLoad load = load_roster_text(cast, GenderTable{});
    REQUIRE(load.entries.size() == 2);
    CHECK(load.entries[0].cast_order == 2);
    CHECK(load.warnings.size() == 1);
}

TEST_CASE("cast order is clamped to >= 1 and defaults on junk") {
    const char* cast =
        "movie_id\tcharacter\tactor\tcategory\tordering\n"
        "m1\tA\tx\tactor\t0\n"
        "m1\tB\ty\tactor\tnope\n";
    RosterLoad load = load_roster_text(cast, GenderTable{});
    REQUIRE(load.entries.size() == 2);
    CHECK(load.entries[0].cast_order == 1);
    CHECK(load.entries[1].cast_order == 1);
}

TEST_CASE("missing cast columns throw") {
    CHECK_THROWS_AS(load_roster_text("movie_id\tcharacter\tactor\n", GenderTable{}),
                    MissingColumnError);
}

TEST_CASE("reconcile_name prefers the longer form") {
    CHECK(reconcile_name("Don Corleone", "Don Vito Corleone") == "Don Vito Corleone");
    CHECK(reconcile_name("Don Vito Corleone", "Don Corleone") == "Don Vito Corleone");
    CHECK(reconcile_name("abc", "xyz") == "abc");  // equal length keeps the first
}

TEST_CASE("blacklist normalizes on membership checks and round-trips") {
    Blacklist bl;
    bl.add("second waiter");
    CHECK(bl.contains("Second  WAITER!"));
    CHECK_FALSE(bl.contains("first waiter"));
    Blacklist again = Blacklist::from_text(bl.to_text());
    CHECK(again.names() == bl.names());
}

TEST_CASE("build_blacklist keeps only generic recurring minor names") {
    auto entry = [](const char* movie, const char* name, const char* actor, int order) {
        RosterEntry e;
        e.movie_id = movie;
        e.character_name = name;
        e.actor_name = actor;
        e.cast_order = order;
        return e;
    };
    std::vector<RosterEntry> corpus = {
        entry("m1", "Second Waiter", "A One", 9),   // generic, two movies -> blacklisted
        entry("m2", "Second Waiter", "B Two", 8),
        entry("m1", "John Carter", "C Three", 9),   // real given name -> spared
        entry("m2", "John Carter", "D Four", 9),
        entry("m1", "Zorg", "E Five", 9),           // same actor both films -> recurring role
        entry("m2", "Zorg", "E Five", 9),
        entry("m1", "Captain", "F Six", 1),         // prominent billing -> spared
        entry("m2", "Captain", "G Seven", 2),
        entry("m1", "Bystander", "H Eight", 12),    // single movie -> spared
    };
    std::set<std::string> given = {"john"};
    Blacklist bl = build_blacklist(corpus, given, {});
    CHECK(bl.names() == std::set<std::string>{"second waiter"});

    std::vector<RosterEntry> kept = filter_roster(corpus, bl);
    CHECK(kept.size() == corpus.size() - 2);
    CHECK_THROWS_AS(build_blacklist({}, {}, {}), EmptyCorpusError);
}

TEST_CASE("load_name_set skips comments and normalizes") {
    std::string path = write_temp("subs2net_names.txt", "# header\nJohn\n  MARY \n\n");
    std::set<std::string> names = load_name_set(path);
    CHECK(names == std::set<std::string>{"john", "mary"});
}

TEST_CASE("load_gender_table parses the CSV and skips bad rows") {
    std::string path = write_temp("subs2net_genders.csv",
                                  "name,gender,probability\n"
                                  "greta,female,0.97\n"
                                  "bad,female,not-a-number\n"
                                  "tom,male,0.99\n");
    GenderTable t = load_gender_table(path);
    CHECK(t.size() == 2);
    CHECK(t.lookup("tom") == Gender::male);
}

TEST_CASE("load_actors tolerates empty year fields") {
    std::string path = write_temp("subs2net_actors.tsv",
                                  "actor\tbirth_year\tdeath_year\n"
                                  "Old Timer\t1900\t1980\n"
                                  "Still Around\t1970\t\n");
    auto actors = load_actors(path);
    REQUIRE(actors.size() == 2);
    CHECK(actors.at("Old Timer").death_year == 1980);
    CHECK_FALSE(actors.at("Still Around").death_year.has_value());
}

TEST_CASE("gender names round-trip") {
    CHECK(gender_name(Gender::female) == "female");
    CHECK(gender_from_name("male") == Gender::male);
    CHECK(gender_from_name("whatever") == Gender::unknown);
}
