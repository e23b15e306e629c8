#include "subs2net/similarity.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "subs2net/text.hpp"

namespace subs2net {

int levenshtein(std::string_view a, std::string_view b) {
    if (a.size() > b.size()) std::swap(a, b);  // a is the shorter row
    const size_t n = a.size(), m = b.size();
    if (n == 0) return static_cast<int>(m);

    std::vector<int> row(n + 1);
    std::iota(row.begin(), row.end(), 0);
    for (size_t j = 1; j <= m; ++j) {
        int diag = row[0];
        row[0] = static_cast<int>(j);
        for (size_t i = 1; i <= n; ++i) {
            int sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
            diag = row[i];
            row[i] = std::min({row[i] + 1, row[i - 1] + 1, sub});
        }
    }
    return row[n];
}

int ratio_score(std::string_view a, std::string_view b) {
    const int max_len = static_cast<int>(std::max(a.size(), b.size()));
    if (max_len == 0) return 0;
    const int lev = levenshtein(a, b);
    // round(100 * (max_len - lev) / max_len) without going through doubles
    return (200 * (max_len - lev) + max_len) / (2 * max_len);
}

namespace {

std::string sorted_token_join(std::string_view normalized) {
    std::vector<std::string> tokens = split(normalized, ' ');
    std::sort(tokens.begin(), tokens.end());
    std::string out;
    for (size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

int best_window_ratio(std::string_view shorter, std::string_view longer) {
    const size_t w = shorter.size();
    int best = 0;
    for (size_t i = 0; i + w <= longer.size(); ++i) {
        best = std::max(best, ratio_score(shorter, longer.substr(i, w)));
        if (best == 100) break;
    }
    return best;
}

}  // namespace

int similarity(std::string_view a, std::string_view b) {
    const std::string na = normalize_name(a);
    const std::string nb = normalize_name(b);
    if (na.empty() && nb.empty()) return 0;
    if (na == nb) return 100;

    int best = ratio_score(na, nb);
    best = std::max(best, ratio_score(sorted_token_join(na), sorted_token_join(nb)));

    const size_t lo = std::min(na.size(), nb.size());
    const size_t hi = std::max(na.size(), nb.size());
    if (2 * hi > 3 * lo) {  // length ratio strictly above 1.5
        std::string_view shorter = na.size() <= nb.size() ? na : nb;
        std::string_view longer = na.size() <= nb.size() ? nb : na;
        const int windowed = best_window_ratio(shorter, longer);
        best = std::max(best, (9 * windowed + 5) / 10);  // round(0.9 * windowed)
    }

    // 100 is reserved for exact normalized matches; a token reordering or a
    // perfect window hit is still a fuzzy result.
    return std::min(best, 99);
}

}  // namespace subs2net
