#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace oracle {

// --- text -------------------------------------------------------------------

std::string normalize(std::string_view s) {
    // Tokenize first, join with single spaces after.
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) tokens.push_back(cur);
        cur.clear();
    };
    for (unsigned char c : s) {
        if (c >= 'A' && c <= 'Z') {
            cur.push_back(static_cast<char>(c + 32));
        } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'' || c == '-' ||
                   c >= 0x80) {
            cur.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

int levenshtein(std::string_view a, std::string_view b) {
    const size_t n = a.size(), m = b.size();
    std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1, 0));
    for (size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
    for (size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
    for (size_t i = 1; i <= n; ++i) {
        for (size_t j = 1; j <= m; ++j) {
            const int cost = a[i - 1] == b[j - 1] ? 0 : 1;
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
        }
    }
    return d[n][m];
}

int ratio(std::string_view a, std::string_view b) {
    const auto max_len = static_cast<double>(std::max(a.size(), b.size()));
    if (max_len == 0) return 0;
    return static_cast<int>(std::llround(100.0 * (max_len - levenshtein(a, b)) / max_len));
}

namespace {

std::string sorted_tokens(const std::string& normalized) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : normalized) {
        if (c == ' ') {
            tokens.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    tokens.push_back(cur);
    std::sort(tokens.begin(), tokens.end());
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

}  // namespace

int similarity(std::string_view a, std::string_view b) {
    const std::string na = normalize(a);
    const std::string nb = normalize(b);
    if (na.empty() && nb.empty()) return 0;
    if (na == nb) return 100;

    int best = ratio(na, nb);
    best = std::max(best, ratio(sorted_tokens(na), sorted_tokens(nb)));

    const size_t lo = std::min(na.size(), nb.size());
    const size_t hi = std::max(na.size(), nb.size());
    if (2 * hi > 3 * lo) {
        const std::string& shorter = na.size() <= nb.size() ? na : nb;
        const std::string& longer = na.size() <= nb.size() ? nb : na;
        int windowed = 0;
        for (size_t i = 0; i + shorter.size() <= longer.size(); ++i) {
            windowed = std::max(windowed, ratio(shorter, longer.substr(i, shorter.size())));
        }
        best = std::max(best, static_cast<int>(std::llround(0.9 * windowed)));
    }
    return std::min(best, 99);
}

// --- graphs -------------------------------------------------------------------

bool Graph::connected(int a, int b) const {
    for (const auto& e : edges) {
        if ((e[0] == a && e[1] == b) || (e[0] == b && e[1] == a)) return true;
    }
    return false;
}

int Graph::weight(int a, int b) const {
    for (const auto& e : edges) {
        if ((e[0] == a && e[1] == b) || (e[0] == b && e[1] == a)) return e[2];
    }
    return 0;
}

namespace {

constexpr double kEps = 1e-12;

struct PathStats {
    double min_len = std::numeric_limits<double>::infinity();
    double sigma = 0;                  // number of shortest paths
    std::vector<double> through;       // shortest paths crossing v as interior
};

// Every prefix of a simple path is itself a simple path, so one exhaustive
// DFS from s visits every simple path s->t for every t.
struct PathEnumerator {
    const Graph& g;
    bool weighted;
    std::vector<std::vector<char>> adj;
    std::vector<std::vector<double>> step;
    std::vector<int> path;
    std::vector<char> used;
    std::vector<PathStats> stats;  // per endpoint

    PathEnumerator(const Graph& graph, bool use_weights)
        : g(graph),
          weighted(use_weights),
          adj(graph.n, std::vector<char>(graph.n, 0)),
          step(graph.n, std::vector<double>(graph.n, 0.0)) {
        for (const auto& e : g.edges) {
            adj[e[0]][e[1]] = adj[e[1]][e[0]] = 1;
            const double s = weighted ? 1.0 / e[2] : 1.0;
            step[e[0]][e[1]] = step[e[1]][e[0]] = s;
        }
    }

    void run(int s) {
        stats.assign(g.n, PathStats{});
        for (auto& st : stats) st.through.assign(g.n, 0.0);
        path.assign(1, s);
        used.assign(g.n, 0);
        used[s] = 1;
        dfs(0.0);
    }

    void dfs(double len) {
        const int v = path.back();
        if (path.size() > 1) {
            PathStats& st = stats[v];
            if (len < st.min_len - kEps) {
                st.min_len = len;
                st.sigma = 1;
                std::fill(st.through.begin(), st.through.end(), 0.0);
                for (size_t i = 1; i + 1 < path.size(); ++i) st.through[path[i]] += 1;
            } else if (len <= st.min_len + kEps) {
                st.sigma += 1;
                for (size_t i = 1; i + 1 < path.size(); ++i) st.through[path[i]] += 1;
            }
        }
        for (int w = 0; w < g.n; ++w) {
            if (used[w] || !adj[v][w]) continue;
            used[w] = 1;
            path.push_back(w);
            dfs(len + step[v][w]);
            path.pop_back();
            used[w] = 0;
        }
    }
};

}  // namespace

std::vector<double> betweenness(const Graph& g, bool weighted, bool normalized) {
    std::vector<double> delta(g.n, 0.0);
    PathEnumerator en(g, weighted);
    for (int s = 0; s < g.n; ++s) {
        en.run(s);
        for (int t = 0; t < g.n; ++t) {
            if (t == s || en.stats[t].sigma == 0) continue;
            for (int v = 0; v < g.n; ++v) {
                delta[v] += en.stats[t].through[v] / en.stats[t].sigma;
            }
        }
    }
    const double scale =
        normalized ? (g.n > 2 ? 1.0 / (static_cast<double>(g.n - 1) * (g.n - 2)) : 0.0) : 0.5;
    for (double& d : delta) d *= scale;
    return delta;
}

namespace {

std::vector<std::vector<double>> hop_distances(const Graph& g) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> d(g.n, std::vector<double>(g.n, inf));
    for (int v = 0; v < g.n; ++v) d[v][v] = 0;
    for (const auto& e : g.edges) d[e[0]][e[1]] = d[e[1]][e[0]] = 1;
    for (int k = 0; k < g.n; ++k) {
        for (int i = 0; i < g.n; ++i) {
            for (int j = 0; j < g.n; ++j) {
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
            }
        }
    }
    return d;
}

}  // namespace

std::vector<double> closeness(const Graph& g) {
    const auto dist = hop_distances(g);
    std::vector<double> out(g.n, 0.0);
    for (int v = 0; v < g.n; ++v) {
        double sum = 0;
        for (int u = 0; u < g.n; ++u) {
            if (u != v && std::isfinite(dist[v][u])) sum += dist[v][u];
        }
        out[v] = sum > 0 ? 1.0 / sum : 0.0;
    }
    return out;
}

std::vector<double> degree_centrality(const Graph& g) {
    std::vector<double> out(g.n, 0.0);
    if (g.n <= 1) return out;
    for (const auto& e : g.edges) {
        out[e[0]] += 1;
        out[e[1]] += 1;
    }
    for (double& v : out) v /= static_cast<double>(g.n - 1);
    return out;
}

std::vector<double> clustering(const Graph& g) {
    std::vector<double> out(g.n, 0.0);
    for (int v = 0; v < g.n; ++v) {
        std::vector<int> nbrs;
        for (int u = 0; u < g.n; ++u) {
            if (u != v && g.connected(u, v)) nbrs.push_back(u);
        }
        const auto k = static_cast<double>(nbrs.size());
        if (k < 2) continue;
        int links = 0;
        for (size_t i = 0; i < nbrs.size(); ++i) {
            for (size_t j = i + 1; j < nbrs.size(); ++j) {
                if (g.connected(nbrs[i], nbrs[j])) ++links;
            }
        }
        out[v] = 2.0 * links / (k * (k - 1));
    }
    return out;
}

std::vector<double> pagerank(const Graph& g, double damping, bool weighted) {
    const int n = g.n;
    if (n == 0) return {};
    std::vector<double> strength(n, 0.0);
    for (const auto& e : g.edges) {
        strength[e[0]] += weighted ? e[2] : 1.0;
        strength[e[1]] += weighted ? e[2] : 1.0;
    }
    // Dense transition matrix, column per source vertex.
    std::vector<std::vector<double>> M(n, std::vector<double>(n, 0.0));
    for (const auto& e : g.edges) {
        const double w = weighted ? e[2] : 1.0;
        M[e[1]][e[0]] = w / strength[e[0]];
        M[e[0]][e[1]] = w / strength[e[1]];
    }
    std::vector<double> rank(n, 1.0 / n), next(n);
    for (int iter = 0; iter < 200; ++iter) {
        double dangling = 0;
        for (int v = 0; v < n; ++v) {
            if (strength[v] == 0.0) dangling += rank[v];
        }
        double delta = 0;
        for (int w = 0; w < n; ++w) {
            double flow = 0;
            for (int v = 0; v < n; ++v) flow += M[w][v] * rank[v];
            next[w] = (1.0 - damping) / n + damping * (flow + dangling / n);
            delta += std::fabs(next[w] - rank[w]);
        }
        rank.swap(next);
        if (delta < 1e-12) break;
    }
    return rank;
}

std::int64_t maximal_clique_count(const Graph& g) {
    std::int64_t count = 0;
    for (unsigned mask = 1; mask < (1u << g.n); ++mask) {
        std::vector<int> members;
        for (int v = 0; v < g.n; ++v) {
            if (mask & (1u << v)) members.push_back(v);
        }
        bool clique = true;
        for (size_t i = 0; i < members.size() && clique; ++i) {
            for (size_t j = i + 1; j < members.size() && clique; ++j) {
                if (!g.connected(members[i], members[j])) clique = false;
            }
        }
        if (!clique) continue;
        bool maximal = true;
        for (int w = 0; w < g.n && maximal; ++w) {
            if (mask & (1u << w)) continue;
            bool adjacent_to_all = true;
            for (int v : members) {
                if (!g.connected(v, w)) {
                    adjacent_to_all = false;
                    break;
                }
            }
            if (adjacent_to_all) maximal = false;
        }
        if (maximal) ++count;
    }
    return count;
}

TriangleCounts triangle_census(const Graph& g, const std::vector<int>& genders) {
    TriangleCounts out;
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            if (!g.connected(i, j)) continue;
            for (int k = j + 1; k < g.n; ++k) {
                if (!g.connected(j, k) || !g.connected(i, k)) continue;
                if (genders[i] == 2 || genders[j] == 2 || genders[k] == 2) {
                    ++out.unknown_excluded;
                    continue;
                }
                const int women =
                    (genders[i] == 0) + (genders[j] == 0) + (genders[k] == 0);
                ++out.by_women[women];
            }
        }
    }
    return out;
}

// --- statistics ---------------------------------------------------------------

double mwu_u(const std::vector<double>& a, const std::vector<double>& b) {
    double u = 0;
    for (double x : a) {
        for (double y : b) {
            if (x > y) {
                u += 1;
            } else if (x == y) {
                u += 0.5;
            }
        }
    }
    return u;
}

double mwu_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pool = a;
    pool.insert(pool.end(), b.begin(), b.end());
    const size_t n = pool.size(), na = a.size();
    const double mu = static_cast<double>(na) * (n - na) / 2.0;
    const double dist_obs = std::fabs(mwu_u(a, b) - mu);

    std::vector<char> mask(n, 0);
    std::fill(mask.end() - static_cast<long>(na), mask.end(), 1);
    std::sort(mask.begin(), mask.end());
    std::int64_t total = 0, tail = 0;
    do {
        std::vector<double> ga, gb;
        for (size_t i = 0; i < n; ++i) (mask[i] ? ga : gb).push_back(pool[i]);
        ++total;
        if (std::fabs(mwu_u(ga, gb) - mu) >= dist_obs - 1e-9) ++tail;
    } while (std::next_permutation(mask.begin(), mask.end()));
    return static_cast<double>(tail) / static_cast<double>(total);
}

double roc_auc(const std::vector<int>& labels, const std::vector<double>& scores) {
    std::int64_t pos = 0, neg = 0;
    for (int l : labels) (l ? pos : neg)++;
    if (pos == 0 || neg == 0) return -1;

    // Group by distinct score, sweep from high to low, integrate trapezoids.
    std::map<double, std::pair<std::int64_t, std::int64_t>> groups;  // score -> (pos, neg)
    for (size_t i = 0; i < labels.size(); ++i) {
        auto& gp = groups[scores[i]];
        (labels[i] ? gp.first : gp.second)++;
    }
    double area = 0, tp = 0, fp = 0;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        const double tp2 = tp + it->second.first;
        const double fp2 = fp + it->second.second;
        area += (fp2 - fp) / neg * (tp + tp2) / (2.0 * pos);
        tp = tp2;
        fp = fp2;
    }
    return area;
}

// --- mention pair counting ------------------------------------------------------

std::vector<PairCount> count_pairs(const std::vector<MentionEvent>& stream,
                                   std::int64_t window_ms) {
    std::map<std::pair<std::string, std::string>, PairCount> acc;
    for (size_t i = 0; i < stream.size(); ++i) {
        std::set<std::string> partners;
        for (size_t j = 0; j < i; ++j) {
            if (stream[i].t_ms - stream[j].t_ms < window_ms &&
                stream[j].character != stream[i].character) {
                partners.insert(stream[j].character);
            }
        }
        for (const std::string& other : partners) {
            auto key = std::minmax(stream[i].character, other);
            PairCount& pc = acc[key];
            pc.a = key.first;
            pc.b = key.second;
            pc.weight += 1;
            pc.timestamps.push_back(stream[i].t_ms);
        }
    }
    std::vector<PairCount> out;
    out.reserve(acc.size());
    for (auto& [_, pc] : acc) out.push_back(std::move(pc));
    return out;
}

}  // namespace oracle
