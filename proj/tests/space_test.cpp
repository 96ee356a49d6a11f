#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"

#include "kurat/enumerate.hpp"
#include "kurat/space.hpp"

using namespace kurat;

TEST_CASE("prefix space closure is the tail interval from the minimum") {
    for (int n = 1; n <= 12; ++n) {
        TopSpace sp = TopSpace::prefix(n);
        for (uint64_t a = 0; a < (1ull << n); ++a) {
            uint64_t want = 0;
            if (a) {
                int lo = __builtin_ctzll(a);
                want = sp.full_mask() & ~((1ull << lo) - 1);
            }
            CHECK(sp.closure_bits(a) == want);
        }
    }
}

TEST_CASE("prefix space interior keeps exactly the initial run") {
    for (int n = 1; n <= 10; ++n) {
        TopSpace sp = TopSpace::prefix(n);
        for (uint64_t a = 0; a < (1ull << n); ++a) {
            uint64_t want = 0;
            for (int x = 0; x < n; ++x) {
                uint64_t head = (x == 63) ? ~0ull : (1ull << (x + 1)) - 1;
                if ((head & ~a) == 0) want |= 1ull << x;
            }
            CHECK(sp.interior_bits(a) == want);
        }
    }
}

TEST_CASE("a mid-interval set on the prefix space has empty interior") {
    // Any set missing the first point contains no open neighborhood at all.
    TopSpace sp = TopSpace::prefix(12);
    PointSet a = PointSet::of(12, {3, 4, 5, 6, 7, 8, 9, 10});
    CHECK(interior(sp, a).bits == 0);
    CHECK(complement(sp, closure(sp, complement(sp, a))).bits == 0);
    PointSet b = PointSet::of(12, {1, 2, 3});
    CHECK(interior(sp, b).bits == b.bits);   // initial segments are open
}

TEST_CASE("interior agrees with complement-closure-complement everywhere") {
    std::mt19937_64 rng(0x6b757261ull);
    for (int m = 1; m <= 5; ++m)
        for (const TopSpace& sp : dedup_spaces(m))
            for (uint64_t a = 0; a < (1ull << m); ++a)
                CHECK(sp.interior_bits(a) ==
                      sp.complement_bits(sp.closure_bits(sp.complement_bits(a))));
    for (int trial = 0; trial < 200; ++trial) {
        int n = 6 + static_cast<int>(rng() % 30);
        TopSpace sp = TopSpace::prefix(n);
        uint64_t a = rng() & sp.full_mask();
        CHECK(sp.interior_bits(a) == sp.complement_bits(sp.closure_bits(sp.complement_bits(a))));
    }
}

TEST_CASE("closure satisfies the Kuratowski axioms on every small space") {
    for (int m = 1; m <= 4; ++m) {
        for (const TopSpace& sp : dedup_spaces(m)) {
            CHECK(sp.closure_bits(0) == 0);
            for (uint64_t a = 0; a < (1ull << m); ++a) {
                uint64_t ka = sp.closure_bits(a);
                CHECK((a & ~ka) == 0);                       // extensive
                CHECK(sp.closure_bits(ka) == ka);            // idempotent
                for (uint64_t b = 0; b <= a; ++b)
                    CHECK(sp.closure_bits(a | b) == (ka | sp.closure_bits(b)));
            }
        }
    }
}

TEST_CASE("validate_space accepts every enumerated space and all prefix spaces") {
    for (int m = 1; m <= 4; ++m)
        for (const TopSpace& sp : dedup_spaces(m)) CHECK(validate_space(sp).valid);
    for (int n = 1; n <= 40; ++n) CHECK(validate_space(TopSpace::prefix(n)).valid);
}

TEST_CASE("non-transitive specialization matrix is rejected with the axiom named") {
    // 2 -> 1 and 1 -> 3 without 2 -> 3.
    std::string text = R"({"points":3,"closure":[[true,false,true],[true,true,false],[false,false,true]]})";
    CHECK_THROWS_WITH_AS(space_from_json(text), doctest::Contains("transitive"), invalid_space_error);
}

TEST_CASE("non-reflexive matrix is rejected") {
    std::string text = R"({"points":2,"closure":[[false,false],[false,true]]})";
    CHECK_THROWS_WITH_AS(space_from_json(text), doctest::Contains("reflexive"), invalid_space_error);
}

TEST_CASE("space json round-trips") {
    for (int m = 1; m <= 4; ++m)
        for (const TopSpace& sp : dedup_spaces(m)) {
            TopSpace back = space_from_json(space_to_json(sp));
            CHECK(back.point_count() == sp.point_count());
            CHECK(back.rows() == sp.rows());
        }
    TopSpace pre = TopSpace::prefix(9);
    CHECK(space_from_json(space_to_json(pre)).rows() == pre.rows());
}

TEST_CASE("malformed space json is refused") {
    CHECK_THROWS_AS(space_from_json("not json"), invalid_space_error);
    CHECK_THROWS_AS(space_from_json(R"({"closure":[]})"), invalid_space_error);
    CHECK_THROWS_AS(space_from_json(R"({"points":2,"closure":[[true,false]]})"), invalid_space_error);
    CHECK_THROWS_AS(space_from_json(R"({"points":0,"closure":[]})"), invalid_space_error);
}

TEST_CASE("discrete space closure is the identity") {
    TopSpace sp = TopSpace::discrete(6);
    for (uint64_t a = 0; a < 64; ++a) {
        CHECK(sp.closure_bits(a) == a);
        CHECK(sp.interior_bits(a) == a);
    }
}

TEST_CASE("point sets enforce their universe") {
    CHECK_THROWS_AS(PointSet::of(3, {4}), dimension_error);
    CHECK_THROWS_AS(PointSet::of(3, {0}), dimension_error);
    PointSet a = PointSet::of(5, {1, 3, 5});
    CHECK(a.labels() == std::vector<int>{1, 3, 5});
    CHECK(a.to_string() == "{1,3,5}");
    CHECK(a.count() == 3);
    CHECK(a.contains_label(3));
    CHECK(!a.contains_label(2));
}

TEST_CASE("set algebra rejects mismatched universes") {
    TopSpace sp = TopSpace::prefix(4);
    PointSet a = PointSet::of(4, {1});
    PointSet b = PointSet::of(5, {1});
    CHECK_THROWS_AS(meet(sp, a, b), dimension_error);
    CHECK_THROWS_AS(closure(sp, b), dimension_error);
    CHECK(join(sp, a, PointSet::of(4, {2})).to_string() == "{1,2}");
}

TEST_CASE("space constructors reject out-of-range sizes and bad rows") {
    CHECK_THROWS_AS(TopSpace::discrete(0), dimension_error);
    CHECK_THROWS_AS(TopSpace::discrete(65), dimension_error);
    CHECK_THROWS_AS(TopSpace(2, std::vector<uint64_t>{0x1ull}), dimension_error);
    // Stray bits outside the universe are masked off, not rejected; here that
    // leaves point 2 non-reflexive, which validation reports.
    TopSpace masked(2, {0x1ull, 0x4ull});
    ValidationReport rep = validate_space(masked);
    CHECK(!rep.valid);
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations.front().axiom == "reflexive");
}
