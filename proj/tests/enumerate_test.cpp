#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"

#include "kurat/enumerate.hpp"

using namespace kurat;

TEST_CASE("labeled topology counts match the known sequence") {
    // Number of distinct topologies (= preorders) on n labeled points.
    const uint64_t want[] = {1, 4, 29, 355, 6942};
    for (int n = 1; n <= 5; ++n) {
        uint64_t got = 0;
        enumerate_spaces(n, false, [&](const TopSpace&) {
            ++got;
            return true;
        });
        CHECK(got == want[n - 1]);
    }
}

TEST_CASE("isomorphism-class counts match the known sequence") {
    const size_t want[] = {1, 3, 9, 33, 139};
    for (int n = 1; n <= 5; ++n) CHECK(dedup_spaces(n).size() == want[n - 1]);
}

TEST_CASE("dedup_spaces memoizes and returns validated spaces") {
    const std::vector<TopSpace>& a = dedup_spaces(3);
    const std::vector<TopSpace>& b = dedup_spaces(3);
    CHECK(&a == &b);
    for (const TopSpace& sp : a) CHECK(validate_space(sp).valid);
}

TEST_CASE("dedup representatives are pairwise non-isomorphic") {
    const std::vector<TopSpace>& reps = dedup_spaces(4);
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j) CHECK(!spaces_isomorphic(reps[i], reps[j]));
}

TEST_CASE("every labeled space is isomorphic to exactly one representative") {
    const std::vector<TopSpace>& reps = dedup_spaces(3);
    enumerate_spaces(3, false, [&](const TopSpace& sp) {
        int hits = 0;
        for (const TopSpace& rep : reps)
            if (spaces_isomorphic(sp, rep)) ++hits;
        CHECK(hits == 1);
        return true;
    });
}

TEST_CASE("visitor early stop is honored") {
    int seen = 0;
    enumerate_spaces(4, false, [&](const TopSpace&) { return ++seen < 10; });
    CHECK(seen == 10);
}

TEST_CASE("spaces_isomorphic detects relabelings and rejects different shapes") {
    // Sierpinski space under both labelings.
    TopSpace a(2, {0x1ull, 0x3ull});
    TopSpace b(2, {0x3ull, 0x2ull});
    CHECK(spaces_isomorphic(a, b));
    CHECK(!spaces_isomorphic(a, TopSpace::discrete(2)));
    CHECK(!spaces_isomorphic(a, TopSpace::discrete(3)));
    // Same degree multiset, different structure needs the exact search:
    // a 3-chain vs. one point below two incomparable points plus transitivity.
    TopSpace chain = TopSpace::prefix(3);
    TopSpace vee(3, {0x1ull, 0x3ull, 0x5ull});
    CHECK(!spaces_isomorphic(chain, vee));
    CHECK(spaces_isomorphic(chain, chain));
}

TEST_CASE("enumeration beyond the cap is refused") {
    CHECK_THROWS_AS(enumerate_spaces(kEnumerationCap + 1, false, [](const TopSpace&) { return true; }),
                    enumeration_cap_error);
    CHECK_THROWS_AS(dedup_spaces(0), enumeration_cap_error);
}

TEST_CASE("subsets_by_popcount orders by size then value") {
    std::vector<uint64_t> got = subsets_by_popcount(4);
    std::vector<uint64_t> want = {0x0, 0x1, 0x2, 0x4, 0x8, 0x3, 0x5, 0x6,
                                  0x9, 0xa, 0xc, 0x7, 0xb, 0xd, 0xe, 0xf};
    CHECK(got == want);
    CHECK(subsets_by_popcount(0) == std::vector<uint64_t>{0});
}
