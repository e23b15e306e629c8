#include "subs2net/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>

#include "subs2net/error.hpp"

namespace subs2net {

namespace {

// U for the sample marked `true` in `mask`, over the pooled midranks.
double u_for_mask(const std::vector<double>& ranks, const std::vector<bool>& mask, std::size_t n_first) {
    double rank_sum = 0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (mask[i]) rank_sum += ranks[i];
    }
    return rank_sum - static_cast<double>(n_first) * (static_cast<double>(n_first) + 1) / 2.0;
}

std::vector<double> midranks(const std::vector<double>& pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t l, std::size_t r) { return pooled[l] < pooled[r]; });
    std::vector<double> ranks(n, 0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        // ranks are 1-based; ties share the average of the ranks they span
        const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

MwuResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw EmptySampleError("mann_whitney_u: empty sample");

    const std::size_t n_a = a.size();
    const std::size_t n_b = b.size();
    const std::size_t n = n_a + n_b;

    std::vector<double> pooled;
    pooled.reserve(n);
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = midranks(pooled);

    std::vector<bool> obs_mask(n, false);
    for (std::size_t i = 0; i < n_a; ++i) obs_mask[i] = true;
    const double u_obs = u_for_mask(ranks, obs_mask, n_a);
    const double mu = static_cast<double>(n_a) * static_cast<double>(n_b) / 2.0;

    MwuResult res;
    res.u = u_obs;

    if (n <= 12) {
        // Exact: enumerate all C(n, n_a) assignments of positions to sample a.
        res.exact = true;
        const double dist_obs = std::fabs(u_obs - mu);
        std::vector<bool> mask(n, false);
        std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n_a), true);
        std::sort(mask.begin(), mask.end());  // lowest permutation for next_permutation
        long long total = 0;
        long long tail = 0;
        do {
            ++total;
            const double u = u_for_mask(ranks, mask, n_a);
            if (std::fabs(u - mu) >= dist_obs - 1e-9) ++tail;
        } while (std::next_permutation(mask.begin(), mask.end()));
        res.p_two_sided = static_cast<double>(tail) / static_cast<double>(total);
        return res;
    }

    // Tie correction: sum of (t^3 - t) over tie groups in the pooled sample.
    std::map<double, long long> tie_counts;
    for (double v : pooled) ++tie_counts[v];
    double tie_term = 0;
    for (const auto& [value, t] : tie_counts) {
        (void)value;
        const double td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double nd = static_cast<double>(n);
    const double var = static_cast<double>(n_a) * static_cast<double>(n_b) / 12.0 *
                       ((nd + 1) - tie_term / (nd * (nd - 1)));
    if (var <= 0) {
        // all pooled values identical: no evidence either way
        res.p_two_sided = 1.0;
        return res;
    }
    const double sigma = std::sqrt(var);
    double z = (std::fabs(u_obs - mu) - 0.5) / sigma;  // continuity correction
    if (z < 0) z = 0;
    res.p_two_sided = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return res;
}

}  // namespace subs2net
