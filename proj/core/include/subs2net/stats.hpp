#pragma once

#include <vector>

namespace subs2net {

struct MwuResult {
    double u = 0;            // U statistic of the first sample
    double p_two_sided = 1;  // in [0, 1]
    bool exact = false;      // exact enumeration vs normal approximation
};

// Two-sided Mann-Whitney U test with midrank tie handling. Small pooled
// samples (n_a + n_b <= 12) get the exact permutation distribution: p is the
// fraction of assignments whose U lies at least as far from the null mean as
// the observed one. Larger samples use the tie-corrected normal
// approximation with continuity correction. U(a,b) + U(b,a) = |a|*|b| always
// holds. Throws EmptySampleError.
MwuResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace subs2net
