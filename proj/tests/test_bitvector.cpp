#include <doctest.h>

#include <random>

#include "rulelist/bitvector.hpp"

using namespace rulelist;

TEST_CASE("bitvector basics") {
    BitVector v(70);
    CHECK(v.size() == 70);
    CHECK(v.count() == 0);
    CHECK(v.none());
    v.set(0);
    v.set(63);
    v.set(64);
    v.set(69);
    CHECK(v.count() == 4);
    CHECK(v.test(63));
    CHECK_FALSE(v.test(62));
    v.set(63, false);
    CHECK(v.count() == 3);
}

TEST_CASE("all-ones construction masks the tail") {
    for (int n : {1, 63, 64, 65, 128, 130}) {
        BitVector ones(n, true);
        CHECK(ones.count() == n);
    }
}

TEST_CASE("pointwise ops match a per-bit loop") {
    std::mt19937_64 rng(7);
    std::bernoulli_distribution coin(0.4);
    for (int n : {1, 17, 64, 65, 200}) {
        BitVector a(n), b(n);
        for (int i = 0; i < n; ++i) {
            if (coin(rng)) a.set(i);
            if (coin(rng)) b.set(i);
        }
        const BitVector land = bit_and(a, b);
        const BitVector landnot = bit_andnot(a, b);
        const BitVector lor = bit_or(a, b);
        CHECK(land.size() == n);
        int expected_and = 0, expected_andnot = 0;
        for (int i = 0; i < n; ++i) {
            CHECK(land.test(i) == (a.test(i) && b.test(i)));
            CHECK(landnot.test(i) == (a.test(i) && !b.test(i)));
            CHECK(lor.test(i) == (a.test(i) || b.test(i)));
            expected_and += a.test(i) && b.test(i);
            expected_andnot += a.test(i) && !b.test(i);
        }
        CHECK(and_count(a, b) == expected_and);
        CHECK(andnot_count(a, b) == expected_andnot);
        CHECK(and_count(a, b) == land.count());
        CHECK(andnot_count(a, b) == landnot.count());
    }
}

TEST_CASE("aliased assignment is safe") {
    BitVector a(100, true), b(100);
    for (int i = 0; i < 100; i += 3) b.set(i);
    const int expected = andnot_count(a, b);
    a.assign_andnot(a, b);
    CHECK(a.count() == expected);
}
