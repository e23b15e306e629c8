#include "subs2net/graph_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>

#include "graph_view.hpp"
#include "subs2net/error.hpp"
#include "subs2net/text.hpp"

namespace subs2net {

using detail::GraphView;

namespace {

constexpr double kDistEps = 1e-12;       // equal-shortest-path tolerance (weighted)
constexpr double kPagerankTol = 1e-12;   // L1 stop; tighter than the documented
                                         // 1e-9 so dual-route checks stay sharp
constexpr int kPagerankMaxIter = 200;

int vertex_id(const GraphView& g, const std::string& key) {
    auto it = g.index.find(key);
    if (it == g.index.end()) throw UnknownVertexError("unknown vertex: " + key);
    return it->second;
}

std::vector<int> bfs_distances(const GraphView& g, int s) {
    std::vector<int> dist(static_cast<size_t>(g.n()), -1);
    std::deque<int> queue{s};
    dist[static_cast<size_t>(s)] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (const auto& [w, _] : g.adj[static_cast<size_t>(v)]) {
            if (dist[static_cast<size_t>(w)] < 0) {
                dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

// Brandes accumulation over ordered (s, *) pairs; caller halves/normalizes.
std::vector<double> brandes_raw(const GraphView& g, bool weighted) {
    const int n = g.n();
    std::vector<double> centrality(static_cast<size_t>(n), 0.0);

    std::vector<double> dist(static_cast<size_t>(n));
    std::vector<double> sigma(static_cast<size_t>(n));
    std::vector<double> delta(static_cast<size_t>(n));
    std::vector<std::vector<int>> preds(static_cast<size_t>(n));
    std::vector<int> order;  // settle order
    order.reserve(static_cast<size_t>(n));

    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        order.clear();

        dist[static_cast<size_t>(s)] = 0.0;
        sigma[static_cast<size_t>(s)] = 1.0;

        if (!weighted) {
            std::deque<int> queue{s};
            while (!queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                order.push_back(v);
                for (const auto& [w, _] : g.adj[static_cast<size_t>(v)]) {
                    double nd = dist[static_cast<size_t>(v)] + 1.0;
                    if (std::isinf(dist[static_cast<size_t>(w)])) {
                        dist[static_cast<size_t>(w)] = nd;
                        queue.push_back(w);
                    }
                    if (dist[static_cast<size_t>(w)] == nd) {
                        sigma[static_cast<size_t>(w)] += sigma[static_cast<size_t>(v)];
                        preds[static_cast<size_t>(w)].push_back(v);
                    }
                }
            }
        } else {
            using Item = std::pair<double, int>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
            std::vector<char> done(static_cast<size_t>(n), 0);
            pq.push({0.0, s});
            while (!pq.empty()) {
                auto [d, v] = pq.top();
                pq.pop();
                if (done[static_cast<size_t>(v)]) continue;
                done[static_cast<size_t>(v)] = 1;
                order.push_back(v);
                for (const auto& [w, weight] : g.adj[static_cast<size_t>(v)]) {
                    if (done[static_cast<size_t>(w)]) continue;
                    double nd = dist[static_cast<size_t>(v)] + 1.0 / weight;
                    if (nd < dist[static_cast<size_t>(w)] - kDistEps) {
                        dist[static_cast<size_t>(w)] = nd;
                        sigma[static_cast<size_t>(w)] = sigma[static_cast<size_t>(v)];
                        preds[static_cast<size_t>(w)].assign(1, v);
                        pq.push({nd, w});
                    } else if (nd <= dist[static_cast<size_t>(w)] + kDistEps) {
                        sigma[static_cast<size_t>(w)] += sigma[static_cast<size_t>(v)];
                        preds[static_cast<size_t>(w)].push_back(v);
                    }
                }
            }
        }

        for (size_t i = order.size(); i-- > 0;) {
            int w = order[i];
            for (int v : preds[static_cast<size_t>(w)]) {
                delta[static_cast<size_t>(v)] += sigma[static_cast<size_t>(v)] /
                                                 sigma[static_cast<size_t>(w)] *
                                                 (1.0 + delta[static_cast<size_t>(w)]);
            }
            if (w != s) centrality[static_cast<size_t>(w)] += delta[static_cast<size_t>(w)];
        }
    }
    return centrality;
}

int64_t bron_kerbosch(const GraphView& g, std::vector<int>& r, std::vector<int> p,
                      std::vector<int> x) {
    if (p.empty() && x.empty()) return r.empty() ? 0 : 1;

    // pivot: vertex of P union X with the most neighbors inside P
    int pivot = -1;
    size_t best_cover = 0;
    for (const std::vector<int>* side : {&p, &x}) {
        for (int u : *side) {
            size_t cover = 0;
            for (int v : p) {
                if (g.connected(u, v)) ++cover;
            }
            if (pivot < 0 || cover > best_cover) {
                pivot = u;
                best_cover = cover;
            }
        }
    }

    std::vector<int> expand;
    for (int v : p) {
        if (pivot < 0 || !g.connected(pivot, v)) expand.push_back(v);
    }

    int64_t count = 0;
    for (int v : expand) {
        std::vector<int> np, nx;
        for (int u : p) {
            if (g.connected(v, u)) np.push_back(u);
        }
        for (int u : x) {
            if (g.connected(v, u)) nx.push_back(u);
        }
        r.push_back(v);
        count += bron_kerbosch(g, r, std::move(np), std::move(nx));
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
    return count;
}

int triangles_through(const GraphView& g, int v) {
    const auto& nbrs = g.adj[static_cast<size_t>(v)];
    int count = 0;
    for (size_t i = 0; i < nbrs.size(); ++i) {
        for (size_t j = i + 1; j < nbrs.size(); ++j) {
            if (g.connected(nbrs[i].first, nbrs[j].first)) ++count;
        }
    }
    return count;
}

std::vector<double> pagerank_vector(const GraphView& g, double damping, bool weighted) {
    const int n = g.n();
    std::vector<double> rank(static_cast<size_t>(n), 1.0 / n);
    std::vector<double> strength(static_cast<size_t>(n), 0.0);
    for (int v = 0; v < n; ++v) {
        for (const auto& [_, w] : g.adj[static_cast<size_t>(v)]) {
            strength[static_cast<size_t>(v)] += weighted ? w : 1.0;
        }
    }

    std::vector<double> next(static_cast<size_t>(n));
    for (int iter = 0; iter < kPagerankMaxIter; ++iter) {
        double dangling = 0.0;
        for (int v = 0; v < n; ++v) {
            if (strength[static_cast<size_t>(v)] == 0.0) dangling += rank[static_cast<size_t>(v)];
        }
        const double base = (1.0 - damping) / n + damping * dangling / n;
        std::fill(next.begin(), next.end(), base);
        for (int v = 0; v < n; ++v) {
            if (strength[static_cast<size_t>(v)] == 0.0) continue;
            const double share = damping * rank[static_cast<size_t>(v)] /
                                 strength[static_cast<size_t>(v)];
            for (const auto& [w, weight] : g.adj[static_cast<size_t>(v)]) {
                next[static_cast<size_t>(w)] += share * (weighted ? weight : 1.0);
            }
        }
        double delta = 0.0;
        for (int v = 0; v < n; ++v) {
            delta += std::abs(next[static_cast<size_t>(v)] - rank[static_cast<size_t>(v)]);
        }
        rank.swap(next);
        if (delta < kPagerankTol) break;
    }
    return rank;
}

}  // namespace

Aggregate aggregate(const std::vector<double>& values) {
    if (values.empty()) throw EmptyInputError("aggregate of an empty value list");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const size_t n = sorted.size();

    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(n - 1);
        const size_t lo = static_cast<size_t>(pos);
        const size_t hi = std::min(lo + 1, n - 1);
        const double frac = pos - static_cast<double>(lo);
        return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
    };

    Aggregate a;
    double sum = 0;
    for (double v : sorted) sum += v;
    a.mean = sum / static_cast<double>(n);
    double var = 0;
    for (double v : sorted) var += (v - a.mean) * (v - a.mean);
    a.std_dev = std::sqrt(var / static_cast<double>(n));
    a.min = sorted.front();
    a.max = sorted.back();
    a.median = quantile(0.5);
    a.q1 = quantile(0.25);
    a.q3 = quantile(0.75);
    return a;
}

int total_weight(const MovieNetwork& net, const std::string& key) {
    if (!net.nodes.count(key)) throw UnknownVertexError("unknown vertex: " + key);
    int sum = 0;
    for (const auto& [ek, edge] : net.edges) {
        if (ek.first == key || ek.second == key) sum += edge.weight;
    }
    return sum;
}

double closeness(const MovieNetwork& net, const std::string& key) {
    GraphView g(net);
    const int v = vertex_id(g, key);
    std::vector<int> dist = bfs_distances(g, v);
    long long sum = 0;
    for (int u = 0; u < g.n(); ++u) {
        if (u != v && dist[static_cast<size_t>(u)] > 0) sum += dist[static_cast<size_t>(u)];
    }
    return sum == 0 ? 0.0 : 1.0 / static_cast<double>(sum);
}

std::map<std::string, double> betweenness_all(const MovieNetwork& net, bool weighted,
                                              bool normalized) {
    GraphView g(net);
    std::vector<double> raw = brandes_raw(g, weighted);
    const int n = g.n();
    // raw counts ordered pairs; unordered needs /2; normalization divides by
    // (n-1)(n-2)/2 pair count
    double scale;
    if (normalized) {
        scale = n > 2 ? 1.0 / (static_cast<double>(n - 1) * (n - 2)) : 0.0;
    } else {
        scale = 0.5;
    }
    std::map<std::string, double> out;
    for (int v = 0; v < n; ++v) {
        out[g.keys[static_cast<size_t>(v)]] = raw[static_cast<size_t>(v)] * scale;
    }
    return out;
}

double betweenness(const MovieNetwork& net, const std::string& key, bool weighted,
                   bool normalized) {
    if (!net.nodes.count(key)) throw UnknownVertexError("unknown vertex: " + key);
    return betweenness_all(net, weighted, normalized).at(key);
}

double degree_centrality(const MovieNetwork& net, const std::string& key) {
    GraphView g(net);
    const int v = vertex_id(g, key);
    if (g.n() <= 1) return 0.0;
    return static_cast<double>(g.degree(v)) / static_cast<double>(g.n() - 1);
}

double clustering(const MovieNetwork& net, const std::string& key) {
    GraphView g(net);
    const int v = vertex_id(g, key);
    const int k = g.degree(v);
    if (k < 2) return 0.0;
    return 2.0 * triangles_through(g, v) / (static_cast<double>(k) * (k - 1));
}

std::map<std::string, double> pagerank(const MovieNetwork& net, double damping, bool weighted) {
    GraphView g(net);
    std::map<std::string, double> out;
    if (g.n() == 0) return out;
    std::vector<double> rank = pagerank_vector(g, damping, weighted);
    for (int v = 0; v < g.n(); ++v) {
        out[g.keys[static_cast<size_t>(v)]] = rank[static_cast<size_t>(v)];
    }
    return out;
}

int64_t count_maximal_cliques(const MovieNetwork& net) {
    GraphView g(net);
    if (g.n() == 0) return 0;
    std::vector<int> r, p(static_cast<size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) p[static_cast<size_t>(v)] = v;
    return bron_kerbosch(g, r, std::move(p), {});
}

double VertexFeatureRow::metric(size_t i) const {
    switch (i) {
        case 0: return total_weight;
        case 1: return degree;
        case 2: return degree_centrality;
        case 3: return closeness;
        case 4: return betweenness;
        case 5: return weighted_betweenness;
        case 6: return clustering;
        case 7: return pagerank;
        default: return weighted_pagerank;
    }
}

std::map<std::string, VertexFeatureRow> compute_vertex_features(const MovieNetwork& net) {
    GraphView g(net);
    const int n = g.n();
    std::map<std::string, VertexFeatureRow> out;
    if (n == 0) return out;

    std::vector<double> bw_raw = brandes_raw(g, false);
    std::vector<double> bww_raw = brandes_raw(g, true);
    const double bw_scale = n > 2 ? 1.0 / (static_cast<double>(n - 1) * (n - 2)) : 0.0;
    std::vector<double> pr = pagerank_vector(g, 0.85, false);
    std::vector<double> prw = pagerank_vector(g, 0.85, true);

    for (int v = 0; v < n; ++v) {
        VertexFeatureRow row;
        double tw = 0;
        for (const auto& [_, w] : g.adj[static_cast<size_t>(v)]) tw += w;
        row.total_weight = tw;
        row.degree = g.degree(v);
        row.degree_centrality = n > 1 ? row.degree / static_cast<double>(n - 1) : 0.0;

        std::vector<int> dist = bfs_distances(g, v);
        long long dsum = 0;
        for (int u = 0; u < n; ++u) {
            if (u != v && dist[static_cast<size_t>(u)] > 0) dsum += dist[static_cast<size_t>(u)];
        }
        row.closeness = dsum == 0 ? 0.0 : 1.0 / static_cast<double>(dsum);

        row.betweenness = bw_raw[static_cast<size_t>(v)] * bw_scale;
        row.weighted_betweenness = bww_raw[static_cast<size_t>(v)] * bw_scale;

        const int k = g.degree(v);
        row.clustering = k < 2 ? 0.0
                               : 2.0 * triangles_through(g, v) / (static_cast<double>(k) * (k - 1));
        row.pagerank = pr[static_cast<size_t>(v)];
        row.weighted_pagerank = prw[static_cast<size_t>(v)];
        out[g.keys[static_cast<size_t>(v)]] = row;
    }
    return out;
}

NetworkFeatures compute_network_features(const MovieNetwork& net) {
    NetworkFeatures nf;
    nf.vertex_count = net.nodes.size();
    nf.edge_count = net.edges.size();
    nf.clique_count = count_maximal_cliques(net);
    if (net.nodes.empty()) return nf;

    auto rows = compute_vertex_features(net);
    nf.has_aggregates = true;
    for (size_t m = 0; m < kVertexMetricNames.size(); ++m) {
        std::vector<double> values;
        values.reserve(rows.size());
        for (const auto& [_, row] : rows) values.push_back(row.metric(m));
        nf.aggregates[m] = aggregate(values);
    }
    return nf;
}

std::string features_to_csv(const MovieNetwork& net) {
    static constexpr std::array<const char*, 7> kStats = {"mean", "median", "std",
                                                          "min",  "max",    "q1", "q3"};
    std::string out = "row_type,name,gender";
    for (const char* metric : kVertexMetricNames) {
        out += ',';
        out += metric;
    }
    out += ",edge_count,vertex_count,clique_count";
    for (const char* metric : kVertexMetricNames) {
        for (const char* stat : kStats) {
            out += ',';
            out += metric;
            out += '_';
            out += stat;
        }
    }
    out += '\n';

    auto rows = compute_vertex_features(net);
    for (const auto& [key, row] : rows) {
        out += "vertex,";
        out += csv_escape(key);
        out += ',';
        out += gender_name(net.nodes.at(key).gender);
        for (size_t m = 0; m < kVertexMetricNames.size(); ++m) {
            out += ',';
            out += format_double(row.metric(m));
        }
        out += std::string(3 + kVertexMetricNames.size() * 7, ',');
        out += '\n';
    }

    NetworkFeatures nf = compute_network_features(net);
    out += "network,";
    out += csv_escape(net.movie_id);
    out += ',';  // gender column empty
    out += std::string(kVertexMetricNames.size(), ',');
    out += ',' + std::to_string(nf.edge_count);
    out += ',' + std::to_string(nf.vertex_count);
    out += ',' + std::to_string(nf.clique_count);
    for (size_t m = 0; m < kVertexMetricNames.size(); ++m) {
        const Aggregate& a = nf.aggregates[m];
        for (double v : {a.mean, a.median, a.std_dev, a.min, a.max, a.q1, a.q3}) {
            out += ',';
            out += format_double(nf.has_aggregates ? v : 0.0);
        }
    }
    out += '\n';
    return out;
}

}  // namespace subs2net
