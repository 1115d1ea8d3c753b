#include <doctest.h>

#include <algorithm>
#include <random>

#include "rulelist/bounds.hpp"
#include "rulelist/oracle.hpp"
#include "test_support.hpp"

using namespace rulelist;
using rulelist::testing::random_instance;

TEST_CASE("rational parsing") {
    CHECK(Rational::from_decimal("0.005").num == 1);
    CHECK(Rational::from_decimal("0.005").den == 200);
    CHECK(Rational::from_decimal("0.01").den == 100);
    CHECK(Rational::from_decimal("0").is_zero());
    CHECK(Rational::from_decimal("1").num == 1);
    CHECK(Rational::from_decimal("0.1").value() == doctest::Approx(0.1));
    CHECK_THROWS_AS(Rational::from_decimal("abc"), ArgumentError);
    CHECK_THROWS_AS(Rational::from_decimal("-0.1"), ArgumentError);
    CHECK_THROWS_AS(Rational::from_decimal(""), ArgumentError);
}

TEST_CASE("bound scale is exact at boundaries") {
    // N=100, lambda=1/100: a child bound equal to the incumbent numerator compares >=.
    BoundScale scale(100, Rational(1, 100));
    const std::int64_t rc = scale.bound_num(30, 0); // objective 0.30
    const std::int64_t b = scale.bound_num(29, 1);  // 0.29 + 0.01 exactly
    CHECK(b == rc);
    CHECK(scale.to_real(rc) == doctest::Approx(0.30));
    CHECK(scale.per_rule() == 100);
}

TEST_CASE("objective examples") {
    // Empty prefix, N=10, 5 positive labels: majority default makes 5 mistakes.
    PrefixStats empty{0, 0, 0, 10};
    CHECK(objective(empty, 5, 0.01).value == doctest::Approx(0.5));
    // Perfect 2-rule list over N=100.
    PrefixStats perfect{2, 0, 100, 100};
    CHECK(objective(perfect, 0, 0.01).value == doctest::Approx(0.02));
}

TEST_CASE("lower bound examples") {
    PrefixStats empty{0, 0, 0, 10};
    CHECK(lower_bound(empty, 0.01) == 0.0);
    PrefixStats stats{2, 3, 40, 100};
    CHECK(lower_bound(stats, 0.01) == doctest::Approx(0.05));
    // lower_bound <= objective for any default mistakes.
    CHECK(lower_bound(stats, 0.01) <= objective(stats, 10, 0.01).value);
}

TEST_CASE("incremental child evaluation") {
    BitVector uncaptured(8, true), captures(8), labels(8), out;
    for (int i = 0; i < 4; ++i) {
        captures.set(i);
        labels.set(i);
    }
    auto pure = incremental_child_mistakes(uncaptured, captures, labels, out);
    CHECK(pure.prediction == true);
    CHECK(pure.new_mistakes == 0);
    CHECK(pure.captured_count == 4);

    BitVector captures6(8), labels2(8);
    for (int i = 0; i < 6; ++i) captures6.set(i);
    labels2.set(0);
    labels2.set(1);
    auto majority = incremental_child_mistakes(uncaptured, captures6, labels2, out);
    CHECK(majority.prediction == false);
    CHECK(majority.new_mistakes == 2);
}

TEST_CASE("incremental bound equals from-scratch recomputation on random prefixes") {
    const auto dataset = random_instance(2024, 64, 8);
    const double lambda = 0.01;
    std::mt19937_64 rng(99);
    BitVector uncaptured(64), captured(64);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<int> ids{0, 1, 2, 3, 4, 5, 6, 7};
        std::shuffle(ids.begin(), ids.end(), rng);
        const int len = static_cast<int>(rng() % 5);
        std::vector<int> prefix(ids.begin(), ids.begin() + len);
        const int child = ids[len];

        // Incremental route: parent from scratch once, then one incremental step.
        const auto parent = evaluate_prefix(dataset.antecedents, dataset.labels, prefix);
        uncaptured = BitVector(64, true);
        for (int id : prefix)
            uncaptured.assign_andnot(uncaptured, dataset.antecedents[id].captures);
        const auto step = incremental_child_mistakes(
            uncaptured, dataset.antecedents[child].captures, dataset.labels, captured);

        std::vector<int> extended = prefix;
        extended.push_back(child);
        const auto scratch = evaluate_prefix(dataset.antecedents, dataset.labels, extended);
        CHECK(parent.prefix_mistakes + step.new_mistakes == scratch.prefix_mistakes);
        const double incremental_bound =
            static_cast<double>(parent.prefix_mistakes) / 64 + lambda * len + lambda +
            static_cast<double>(step.new_mistakes) / 64;
        PrefixStats stats{len + 1, scratch.prefix_mistakes, scratch.captured_count, 64};
        CHECK(incremental_bound == doctest::Approx(lower_bound(stats, lambda)));

        // Default rule equivalence with the from-scratch objective.
        const auto def = incremental_default(uncaptured, captured, dataset.labels);
        CHECK(def.default_mistakes == scratch.default_mistakes);
        CHECK(def.default_prediction == scratch.default_prediction);
    }
}

TEST_CASE("incremental default examples") {
    BitVector uncaptured(10), captured(10), labels(10);
    auto empty = incremental_default(uncaptured, captured, labels);
    CHECK(empty.default_mistakes == 0);
    CHECK(empty.default_prediction == true); // tie rule on the empty remainder

    BitVector all(10, true);
    for (int i = 0; i < 3; ++i) labels.set(i);
    auto majority = incremental_default(all, captured, labels);
    CHECK(majority.default_prediction == false);
    CHECK(majority.default_mistakes == 3);
}

TEST_CASE("equivalent points bound examples") {
    BitVector uncaptured(4, true), zero_mask(4), one_mask(4);
    CHECK(equiv_points_default_bound(uncaptured, zero_mask, 4) == 0.0);
    one_mask.set(2);
    CHECK(equiv_points_default_bound(uncaptured, one_mask, 4) == doctest::Approx(0.25));
}

TEST_CASE("equivalent points bound lower-bounds every extension") {
    const auto dataset = random_instance(5150, 48, 6);
    const double lambda = 0.02;
    // For every prefix of length <= 2, every extension's objective clears b + b0.
    std::vector<std::vector<int>> prefixes{{}};
    for (int a = 0; a < 6; ++a) {
        prefixes.push_back({a});
        for (int b = 0; b < 6; ++b)
            if (b != a) prefixes.push_back({a, b});
    }
    BitVector uncaptured(48);
    for (const auto& prefix : prefixes) {
        const auto eval = evaluate_prefix(dataset.antecedents, dataset.labels, prefix);
        uncaptured = BitVector(48, true);
        for (int id : prefix)
            uncaptured.assign_andnot(uncaptured, dataset.antecedents[id].captures);
        const double b = static_cast<double>(eval.prefix_mistakes) / 48 +
                         lambda * static_cast<double>(prefix.size());
        const double b0 = equiv_points_default_bound(uncaptured, dataset.minority_mask, 48);
        for (int ext = 0; ext < 6; ++ext) {
            if (std::find(prefix.begin(), prefix.end(), ext) != prefix.end()) continue;
            auto extended = prefix;
            extended.push_back(ext);
            const auto ext_eval = evaluate_prefix(dataset.antecedents, dataset.labels, extended);
            const double objective_value = static_cast<double>(ext_eval.total_mistakes()) / 48 +
                                           lambda * static_cast<double>(extended.size());
            CHECK(objective_value >= b + b0 - 1e-12);
        }
        // Sandwich: b <= b + b0 <= the prefix's own objective.
        const double own = static_cast<double>(eval.total_mistakes()) / 48 +
                           lambda * static_cast<double>(prefix.size());
        CHECK(b + b0 <= own + 1e-12);
    }
}

TEST_CASE("lookahead boundary") {
    CHECK(lookahead_prunes(0.29, 0.01, 0.30));
    CHECK_FALSE(lookahead_prunes(0.28, 0.01, 0.30));
    CHECK(lookahead_prunes(0.0, 0.0, 0.0)); // degenerate lambda = 0
}

TEST_CASE("max prefix length") {
    CHECK(max_prefix_length(0.5, 0.01, 100) == 50);
    CHECK(max_prefix_length(0.5, 0.01, 30) == 30);
    CHECK(max_prefix_length(1.0, 0.0, 17) == 17); // lambda = 0 falls back to M
    // Simple upper bound: any initial incumbent <= 0.5 gives at most floor(1/(2 lambda)).
    for (double rc : {0.5, 0.4, 0.23})
        CHECK(max_prefix_length(rc, 0.01, 1000) <= 50);
}

TEST_CASE("remaining search space examples") {
    // Queue holding the empty prefix with b=0: f = min(floor(1/0.5), 3) = 2,
    // total 1 + 3 + 6 = 10.
    std::vector<QueueSnapshotEntry> queue{{0, 0.0}};
    CHECK(remaining_search_space(1.0, queue, 0.5, 3) == 10);
    // A full-length entry admits no extensions.
    std::vector<QueueSnapshotEntry> full{{3, 0.0}};
    CHECK(remaining_search_space(1.0, full, 0.5, 3) == 1);
    // lambda = 0: M-capped variant.
    CHECK(remaining_search_space(1.0, full, 0.0, 3) == 1);
}

TEST_CASE("prefix evaluation counting formulas") {
    CHECK(naive_total_evaluations(3, 0) == 1);
    CHECK(symmetry_aware_total(3, 0) == 1);

    // Two independent routes for M=100, K=5. Naive: sum of falling factorials.
    mpz_class naive = 0, term = 1;
    for (int k = 0; k <= 5; ++k) {
        naive += term;
        term *= 100 - k;
    }
    CHECK(naive_total_evaluations(100, 5) == naive);
    CHECK(naive == mpz_class("9129592001"));

    // Symmetry-aware: falling(M,k)/(k-1)! via exact division, vs the binomial form.
    mpz_class sym = 1;
    for (int k = 1; k <= 5; ++k) {
        mpz_class falling = 1, factorial = 1;
        for (int i = 0; i < k; ++i) falling *= 100 - i;
        for (int i = 2; i < k; ++i) factorial *= i;
        mpz_class quotient;
        mpz_divexact(quotient.get_mpz_t(), falling.get_mpz_t(), factorial.get_mpz_t());
        sym += quotient;
    }
    CHECK(symmetry_aware_total(100, 5) == sym);
    CHECK(sym == mpz_class("392617601"));
}

TEST_CASE("curiosity") {
    PrefixStats half{1, 10, 50, 100}; // b = 0.1 at lambda 0, support 0.5
    CHECK(curiosity(half, 0.0) == doctest::Approx(0.2));
    PrefixStats full{1, 10, 100, 100};
    CHECK(curiosity(full, 0.0) == doctest::Approx(0.1));
    // Halving support doubles curiosity at fixed bound.
    PrefixStats quarter{1, 10, 25, 100};
    CHECK(curiosity(quarter, 0.0) == doctest::Approx(2.0 * curiosity(half, 0.0)));
}
