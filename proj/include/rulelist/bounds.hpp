#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "rulelist/bitvector.hpp"
#include "rulelist/errors.hpp"

namespace rulelist {

// Exact non-negative rational, used for the regularization parameter so that every
// bound comparison in the solver is integer arithmetic. Parsed from decimal strings
// ("0.005" -> 1/200); never constructed from a double.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    static Rational from_decimal(const std::string& text);

    bool is_zero() const { return num == 0; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Fixed-denominator arithmetic for one problem instance: with lambda = p/q and N
// samples, every objective and lower bound is an integer numerator over D = N*q.
//   value(mistakes, K) = mistakes/N + lambda*K = (mistakes*q + K*p*N) / D
// Numerators fit int64 comfortably at desk scale (N <= ~6e5, q <= 1e9).
class BoundScale {
public:
    BoundScale(int n_samples, Rational lambda);

    std::int64_t bound_num(std::int64_t mistakes, std::int64_t length) const {
        return mistakes * q_ + length * per_rule_;
    }
    // The +lambda step used by the lookahead bound and child extensions.
    std::int64_t per_rule() const { return per_rule_; }
    double to_real(std::int64_t num) const {
        return static_cast<double>(num) / static_cast<double>(denom_);
    }
    int n() const { return n_; }
    const Rational& lambda() const { return lambda_; }
    bool lambda_is_zero() const { return lambda_.is_zero(); }

    // floor((a - b) / lambda) over exact numerators; lambda must be positive.
    std::int64_t floor_div_lambda(std::int64_t num_diff) const {
        return num_diff >= 0 ? num_diff / per_rule_ : -((-num_diff + per_rule_ - 1) / per_rule_);
    }

private:
    int n_;
    Rational lambda_;
    std::int64_t q_;        // lambda denominator
    std::int64_t per_rule_; // p * N
    std::int64_t denom_;    // N * q
};

// --- Objective and its lower bound ------------------------------------------------

struct PrefixStats {
    int length = 0;          // K
    int prefix_mistakes = 0; // samples captured and misclassified by the prefix
    int captured_count = 0;  // popcount of the union of in-context captures
    int n = 0;               // dataset size N

    int not_captured_count() const { return n - captured_count; }
};

struct ObjectiveValue {
    int mistakes = 0; // prefix + default misclassifications
    int length = 0;
    double value = 0.0; // mistakes/N + lambda*K
};

ObjectiveValue objective(const PrefixStats& stats, int default_mistakes, double lambda);
double lower_bound(const PrefixStats& stats, double lambda);

// --- Incremental child evaluation --------------------------------------------------

struct ChildEval {
    int new_mistakes = 0; // misclassifications of the appended rule, in context
    bool prediction = false;
    int captured_count = 0; // samples the new rule captures in context
};

// captured_out := parent_uncaptured AND antecedent_captures. Prediction is the
// majority label among those samples, ties predicting 1.
ChildEval incremental_child_mistakes(const BitVector& parent_uncaptured,
                                     const BitVector& antecedent_captures,
                                     const BitVector& labels,
                                     BitVector& captured_out);

struct DefaultEval {
    int default_mistakes = 0;
    bool default_prediction = false;
    int remaining_count = 0;
};

// Evaluates the default rule over parent_uncaptured ANDNOT captured_in_context;
// majority prediction with ties to 1 (an empty remainder predicts 1). When
// remainder_out is non-null the remainder vector is materialized into it.
DefaultEval incremental_default(const BitVector& parent_uncaptured,
                                const BitVector& captured_in_context,
                                const BitVector& labels,
                                BitVector* remainder_out = nullptr);

// --- Equivalent points bound --------------------------------------------------------

inline int equiv_points_minority_count(const BitVector& uncaptured, const BitVector& minority_mask) {
    return and_count(uncaptured, minority_mask);
}

inline double equiv_points_default_bound(const BitVector& uncaptured,
                                         const BitVector& minority_mask, int n) {
    return static_cast<double>(equiv_points_minority_count(uncaptured, minority_mask)) / n;
}

// --- Pruning predicates and length bounds ------------------------------------------

// True iff no strict extension of a prefix with this bound can beat the incumbent.
inline bool lookahead_prunes(double lb, double lambda, double incumbent) {
    return lb + lambda >= incumbent;
}

// min(floor(incumbent / lambda), m); the trivial bound m when lambda == 0.
int max_prefix_length(double incumbent, double lambda, int m);

// --- Search space size estimators (exact big integers) -----------------------------

struct QueueSnapshotEntry {
    int length = 0;
    double bound = 0.0;
};

// Remaining prefix evaluations Gamma(Rc, Q): sum over queue entries of
// sum_{k=0}^{f} (M-L)!/(M-L-k)!, f = min(floor((Rc - b)/lambda), M - L).
// With lambda == 0 the estimator is unavailable; the M-capped variant
// (f = M - L for every entry) is reported instead.
mpz_class remaining_search_space(double incumbent, const std::vector<QueueSnapshotEntry>& queue,
                                 double lambda, int m);

// Exact-numerator variant used by the solver's incremental estimator.
mpz_class extensions_within(int m, int length, int f_cap);

mpz_class naive_total_evaluations(int m, int k_max);
mpz_class symmetry_aware_total(int m, int k_max);

// --- Scheduling priority ------------------------------------------------------------

// lower_bound / normalized prefix support; undefined for prefixes capturing nothing.
double curiosity(const PrefixStats& stats, double lambda);

} // namespace rulelist
