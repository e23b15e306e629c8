#include "subs2net/network.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "subs2net/error.hpp"
#include "subs2net/text.hpp"

namespace subs2net {

EdgeKey MovieNetwork::edge_key(std::string_view a, std::string_view b) {
    return a < b ? EdgeKey{std::string(a), std::string(b)} : EdgeKey{std::string(b), std::string(a)};
}

bool MovieNetwork::has_edge(std::string_view a, std::string_view b) const {
    return edges.count(edge_key(a, b)) > 0;
}

int MovieNetwork::edge_weight(std::string_view a, std::string_view b) const {
    auto it = edges.find(edge_key(a, b));
    return it == edges.end() ? 0 : it->second.weight;
}

MovieNetwork build_network(std::vector<Mention> mentions, const std::vector<RosterEntry>& roster,
                           int t_window_s, int w_min, const std::string& movie_id) {
    MovieNetwork net;
    net.movie_id = movie_id;

    for (const RosterEntry& e : roster) {
        std::string key = normalize_name(e.character_name);
        if (key.empty()) continue;
        auto [it, inserted] = net.nodes.try_emplace(key);
        if (inserted) {
            it->second = NodeInfo{e.character_name, e.gender, e.actor_name};
        } else if (it->second.gender == Gender::unknown) {
            it->second.gender = e.gender;
        }
    }

    std::stable_sort(mentions.begin(), mentions.end(),
                     [](const Mention& a, const Mention& b) { return a.time_ms < b.time_ms; });

    const int64_t window_ms = static_cast<int64_t>(t_window_s) * 1000;
    std::set<std::string> linked;  // characters already paired with the current mention
    for (size_t j = 0; j < mentions.size(); ++j) {
        const Mention& m = mentions[j];
        if (!net.nodes.count(m.character_key)) continue;  // not on the (filtered) roster
        linked.clear();
        for (size_t k = j; k-- > 0;) {
            const Mention& prior = mentions[k];
            if (m.time_ms - prior.time_ms >= window_ms) break;
            if (prior.character_key == m.character_key) continue;
            if (!net.nodes.count(prior.character_key)) continue;
            if (!linked.insert(prior.character_key).second) continue;
            EdgeData& edge = net.edges[MovieNetwork::edge_key(m.character_key, prior.character_key)];
            edge.weight += 1;
            edge.timestamps.push_back(m.time_ms);
        }
    }

    std::erase_if(net.edges, [&](const auto& kv) { return kv.second.weight < w_min; });
    return net;
}

ExportFormat export_format_from_name(std::string_view name) {
    if (name == "gexf") return ExportFormat::gexf;
    if (name == "json") return ExportFormat::json;
    if (name == "csv") return ExportFormat::csv;
    throw UnsupportedFormatError("unsupported export format: " + std::string(name));
}

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string export_gexf(const MovieNetwork& net) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n";
    out += "  <meta><creator>subs2net</creator><description>" + xml_escape(net.movie_id) +
           "</description></meta>\n";
    out += "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n";
    out += "    <attributes class=\"node\">\n";
    out += "      <attribute id=\"0\" title=\"gender\" type=\"string\"/>\n";
    out += "      <attribute id=\"1\" title=\"actor\" type=\"string\"/>\n";
    out += "    </attributes>\n";
    out += "    <nodes>\n";
    for (const auto& [key, info] : net.nodes) {
        out += "      <node id=\"" + xml_escape(key) + "\" label=\"" +
               xml_escape(info.display_name) + "\">\n";
        out += "        <attvalues>\n";
        out += "          <attvalue for=\"0\" value=\"" + std::string(gender_name(info.gender)) +
               "\"/>\n";
        out += "          <attvalue for=\"1\" value=\"" + xml_escape(info.actor_name) + "\"/>\n";
        out += "        </attvalues>\n";
        out += "      </node>\n";
    }
    out += "    </nodes>\n";
    out += "    <edges>\n";
    int edge_id = 0;
    for (const auto& [key, edge] : net.edges) {
        out += "      <edge id=\"" + std::to_string(edge_id++) + "\" source=\"" +
               xml_escape(key.first) + "\" target=\"" + xml_escape(key.second) + "\" weight=\"" +
               std::to_string(edge.weight) + "\"/>\n";
    }
    out += "    </edges>\n";
    out += "  </graph>\n";
    out += "</gexf>\n";
    return out;
}

std::string export_json(const MovieNetwork& net) {
    nlohmann::ordered_json j;
    j["movie_id"] = net.movie_id;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& [key, info] : net.nodes) {
        j["nodes"].push_back({{"id", key},
                              {"display_name", info.display_name},
                              {"gender", std::string(gender_name(info.gender))},
                              {"actor", info.actor_name}});
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [key, edge] : net.edges) {
        j["edges"].push_back({{"source", key.first},
                              {"target", key.second},
                              {"weight", edge.weight},
                              {"timestamps", edge.timestamps}});
    }
    return j.dump(2) + "\n";
}

std::string export_csv(const MovieNetwork& net) {
    std::string out = "source,target,weight\n";
    for (const auto& [key, edge] : net.edges) {
        out += csv_escape(key.first);
        out += ',';
        out += csv_escape(key.second);
        out += ',';
        out += std::to_string(edge.weight);
        out += '\n';
    }
    return out;
}

}  // namespace

std::string export_network(const MovieNetwork& net, ExportFormat format) {
    switch (format) {
        case ExportFormat::gexf: return export_gexf(net);
        case ExportFormat::json: return export_json(net);
        default: return export_csv(net);
    }
}

MovieNetwork network_from_json(std::string_view json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    MovieNetwork net;
    net.movie_id = j.value("movie_id", "");
    for (const auto& n : j.at("nodes")) {
        NodeInfo info;
        info.display_name = n.value("display_name", "");
        info.gender = gender_from_name(n.value("gender", "unknown"));
        info.actor_name = n.value("actor", "");
        net.nodes[n.at("id").get<std::string>()] = std::move(info);
    }
    for (const auto& e : j.at("edges")) {
        EdgeData edge;
        edge.weight = e.at("weight").get<int>();
        if (e.contains("timestamps")) {
            edge.timestamps = e.at("timestamps").get<std::vector<int64_t>>();
        }
        net.edges[MovieNetwork::edge_key(e.at("source").get<std::string>(),
                                         e.at("target").get<std::string>())] = std::move(edge);
    }
    return net;
}

namespace {

// Minimal XML tag scanner: yields tag name + attributes for every element
// start tag. Good enough for machine-written GEXF, not a general parser.
struct XmlTag {
    std::string name;
    std::map<std::string, std::string> attrs;
    bool closing = false;
};

std::string xml_unescape(std::string_view s) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '&') {
            out.push_back(s[i]);
            continue;
        }
        size_t semi = s.find(';', i);
        if (semi == std::string_view::npos) {
            out.push_back(s[i]);
            continue;
        }
        std::string_view ent = s.substr(i + 1, semi - i - 1);
        if (ent == "amp") out.push_back('&');
        else if (ent == "lt") out.push_back('<');
        else if (ent == "gt") out.push_back('>');
        else if (ent == "quot") out.push_back('"');
        else if (ent == "apos") out.push_back('\'');
        else {
            out.push_back('&');
            continue;
        }
        i = semi;
    }
    return out;
}

std::vector<XmlTag> scan_xml_tags(std::string_view text) {
    std::vector<XmlTag> tags;
    size_t i = 0;
    while ((i = text.find('<', i)) != std::string_view::npos) {
        size_t end = text.find('>', i + 1);
        if (end == std::string_view::npos) break;
        std::string_view body = text.substr(i + 1, end - i - 1);
        i = end + 1;
        if (body.empty() || body[0] == '?' || body[0] == '!') continue;

        XmlTag tag;
        if (body[0] == '/') {
            tag.closing = true;
            body.remove_prefix(1);
        }
        size_t p = 0;
        while (p < body.size() && !std::isspace(static_cast<unsigned char>(body[p])) &&
               body[p] != '/')
            ++p;
        tag.name = std::string(body.substr(0, p));

        while (p < body.size()) {
            while (p < body.size() && (std::isspace(static_cast<unsigned char>(body[p])) ||
                                       body[p] == '/'))
                ++p;
            size_t eq = body.find('=', p);
            if (eq == std::string_view::npos) break;
            std::string attr_name = trim(body.substr(p, eq - p));
            size_t q1 = body.find('"', eq + 1);
            if (q1 == std::string_view::npos) break;
            size_t q2 = body.find('"', q1 + 1);
            if (q2 == std::string_view::npos) break;
            tag.attrs[attr_name] = xml_unescape(body.substr(q1 + 1, q2 - q1 - 1));
            p = q2 + 1;
        }
        tags.push_back(std::move(tag));
    }
    return tags;
}

}  // namespace

MovieNetwork import_gexf(std::string_view gexf_text) {
    MovieNetwork net;
    std::map<std::string, std::string> attr_titles;  // attribute id -> title
    std::string current_node;

    for (const XmlTag& tag : scan_xml_tags(gexf_text)) {
        if (tag.closing) {
            if (tag.name == "node") current_node.clear();
            continue;
        }
        if (tag.name == "attribute") {
            auto id = tag.attrs.find("id");
            auto title = tag.attrs.find("title");
            if (id != tag.attrs.end() && title != tag.attrs.end()) {
                attr_titles[id->second] = to_lower_ascii(title->second);
            }
        } else if (tag.name == "node") {
            auto id = tag.attrs.find("id");
            if (id == tag.attrs.end()) continue;
            current_node = id->second;
            NodeInfo& info = net.nodes[current_node];
            auto label = tag.attrs.find("label");
            info.display_name = label != tag.attrs.end() ? label->second : current_node;
        } else if (tag.name == "attvalue" && !current_node.empty()) {
            auto for_it = tag.attrs.find("for");
            auto value = tag.attrs.find("value");
            if (for_it == tag.attrs.end() || value == tag.attrs.end()) continue;
            auto title = attr_titles.find(for_it->second);
            std::string name = title != attr_titles.end() ? title->second : for_it->second;
            if (name == "gender") {
                net.nodes[current_node].gender = gender_from_name(to_lower_ascii(value->second));
            } else if (name == "actor") {
                net.nodes[current_node].actor_name = value->second;
            }
        } else if (tag.name == "edge") {
            auto src = tag.attrs.find("source");
            auto dst = tag.attrs.find("target");
            if (src == tag.attrs.end() || dst == tag.attrs.end()) continue;
            if (src->second == dst->second) continue;
            EdgeData& edge = net.edges[MovieNetwork::edge_key(src->second, dst->second)];
            auto w = tag.attrs.find("weight");
            int weight = 1;
            if (w != tag.attrs.end()) {
                try {
                    weight = static_cast<int>(std::lround(std::stod(w->second)));
                } catch (...) {
                }
            }
            edge.weight = weight;
            // GEXF has no timestamp payload; nodes referenced only by edges
            // still need to exist
            if (!net.nodes.count(src->second)) net.nodes[src->second].display_name = src->second;
            if (!net.nodes.count(dst->second)) net.nodes[dst->second].display_name = dst->second;
        }
    }
    return net;
}

MovieNetwork snapshot(const MovieNetwork& net, int64_t until_ms) {
    MovieNetwork out;
    out.movie_id = net.movie_id;
    out.nodes = net.nodes;
    for (const auto& [key, edge] : net.edges) {
        EdgeData trimmed;
        for (int64_t ts : edge.timestamps) {
            if (ts <= until_ms) trimmed.timestamps.push_back(ts);
        }
        trimmed.weight = static_cast<int>(trimmed.timestamps.size());
        if (trimmed.weight > 0) out.edges.emplace(key, std::move(trimmed));
    }
    return out;
}

}  // namespace subs2net
