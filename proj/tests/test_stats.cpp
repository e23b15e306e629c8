#include <doctest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "subs2net/error.hpp"
#include "subs2net/stats.hpp"

using namespace subs2net;

TEST_CASE("hand-worked exact U and p") {
    // a below b: U(a) = 0; the permutation tail is the two extreme assignments
    MwuResult r = mann_whitney_u({1, 2}, {3, 4});
    CHECK(r.u == 0);
    CHECK(r.exact);
    CHECK(r.p_two_sided == doctest::Approx(2.0 / 6.0));

    MwuResult flat = mann_whitney_u({1, 1}, {1, 1});
    CHECK(flat.u == doctest::Approx(2.0));  // all ties split the wins
    CHECK(flat.p_two_sided == doctest::Approx(1.0));
}

TEST_CASE("U identity holds in both regimes") {
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> value(0, 5);  // heavy ties
    std::uniform_int_distribution<size_t> size_small(1, 6);
    std::uniform_int_distribution<size_t> size_large(13, 40);
    for (int trial = 0; trial < 1000; ++trial) {
        auto& size = trial % 2 ? size_large : size_small;
        std::vector<double> a(size(rng)), b(size(rng));
        for (double& x : a) x = value(rng);
        for (double& x : b) x = value(rng);
        MwuResult ab = mann_whitney_u(a, b);
        MwuResult ba = mann_whitney_u(b, a);
        CHECK(ab.u + ba.u == doctest::Approx(static_cast<double>(a.size() * b.size())));
        CHECK(ab.p_two_sided == doctest::Approx(ba.p_two_sided));
        CHECK(ab.p_two_sided >= 0.0);
        CHECK(ab.p_two_sided <= 1.0);
    }
}

TEST_CASE("exact enumeration matches the pairwise oracle") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> value(0, 4);
    for (size_t na = 1; na <= 5; ++na) {
        for (size_t nb = 1; nb <= 5; ++nb) {
            for (int rep = 0; rep < 10; ++rep) {
                std::vector<double> a(na), b(nb);
                for (double& x : a) x = value(rng);
                for (double& x : b) x = value(rng);
                MwuResult r = mann_whitney_u(a, b);
                CHECK(r.exact);
                CHECK(r.u == doctest::Approx(oracle::mwu_u(a, b)));
                CHECK(r.p_two_sided == doctest::Approx(oracle::mwu_exact_p(a, b)));
            }
        }
    }
}

TEST_CASE("pooled size over 12 switches to the normal approximation") {
    std::vector<double> a(7, 1.0), b(6, 2.0);
    for (size_t i = 0; i < a.size(); ++i) a[i] += i;
    for (size_t i = 0; i < b.size(); ++i) b[i] += i;
    CHECK_FALSE(mann_whitney_u(a, b).exact);
    CHECK(mann_whitney_u({1, 2, 3, 4, 5, 6}, {7, 8, 9, 10, 11, 12}).exact);
}

TEST_CASE("clearly separated large samples give a tiny p") {
    std::vector<double> low, high;
    for (int i = 0; i < 15; ++i) {
        low.push_back(i);
        high.push_back(100 + i);
    }
    MwuResult r = mann_whitney_u(low, high);
    CHECK(r.u == 0);
    CHECK_FALSE(r.exact);
    CHECK(r.p_two_sided < 1e-4);
}

TEST_CASE("degenerate all-equal samples return p = 1") {
    std::vector<double> a(10, 3.0), b(10, 3.0);
    MwuResult r = mann_whitney_u(a, b);
    CHECK(r.p_two_sided == doctest::Approx(1.0));
    CHECK(r.u == doctest::Approx(50.0));
}

TEST_CASE("empty samples throw") {
    CHECK_THROWS_AS(mann_whitney_u({}, {1.0}), EmptySampleError);
    CHECK_THROWS_AS(mann_whitney_u({1.0}, {}), EmptySampleError);
}
