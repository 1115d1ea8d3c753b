#include "rulelist/bounds.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace rulelist {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d <= 0 || n < 0) throw ArgumentError("rational must be non-negative with positive denominator");
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::from_decimal(const std::string& text) {
    std::size_t pos = 0;
    std::int64_t whole = 0, frac = 0, scale = 1;
    bool any_digit = false;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        whole = whole * 10 + (text[pos] - '0');
        any_digit = true;
        ++pos;
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            if (scale > 1000000000000LL) throw ArgumentError("too many decimal digits: " + text);
            frac = frac * 10 + (text[pos] - '0');
            scale *= 10;
            any_digit = true;
            ++pos;
        }
    }
    if (!any_digit || pos != text.size())
        throw ArgumentError("not a non-negative decimal: '" + text + "'");
    return Rational(whole * scale + frac, scale);
}

BoundScale::BoundScale(int n_samples, Rational lambda)
    : n_(n_samples), lambda_(lambda), q_(lambda.den),
      per_rule_(lambda.num * n_samples),
      denom_(static_cast<std::int64_t>(n_samples) * lambda.den) {
    if (n_samples <= 0) throw ArgumentError("empty dataset");
}

ObjectiveValue objective(const PrefixStats& stats, int default_mistakes, double lambda) {
    assert(default_mistakes <= stats.not_captured_count());
    ObjectiveValue out;
    out.mistakes = stats.prefix_mistakes + default_mistakes;
    out.length = stats.length;
    out.value = static_cast<double>(out.mistakes) / stats.n + lambda * stats.length;
    return out;
}

double lower_bound(const PrefixStats& stats, double lambda) {
    return static_cast<double>(stats.prefix_mistakes) / stats.n + lambda * stats.length;
}

ChildEval incremental_child_mistakes(const BitVector& parent_uncaptured,
                                     const BitVector& antecedent_captures,
                                     const BitVector& labels,
                                     BitVector& captured_out) {
    captured_out.assign_and(parent_uncaptured, antecedent_captures);
    const int n_captured = captured_out.count();
    const int n_positive = and_count(captured_out, labels);
    ChildEval out;
    out.captured_count = n_captured;
    out.prediction = 2 * n_positive >= n_captured; // tie -> 1
    out.new_mistakes = out.prediction ? n_captured - n_positive : n_positive;
    return out;
}

DefaultEval incremental_default(const BitVector& parent_uncaptured,
                                const BitVector& captured_in_context,
                                const BitVector& labels,
                                BitVector* remainder_out) {
    DefaultEval out;
    if (remainder_out) {
        remainder_out->assign_andnot(parent_uncaptured, captured_in_context);
        out.remaining_count = remainder_out->count();
        const int n_positive = and_count(*remainder_out, labels);
        out.default_prediction = 2 * n_positive >= out.remaining_count;
        out.default_mistakes = out.default_prediction ? out.remaining_count - n_positive : n_positive;
        return out;
    }
    BitVector remainder;
    return incremental_default(parent_uncaptured, captured_in_context, labels, &remainder);
}

int max_prefix_length(double incumbent, double lambda, int m) {
    if (lambda <= 0.0) return m;
    const double ratio = incumbent / lambda;
    if (ratio >= static_cast<double>(m)) return m;
    return std::min(static_cast<int>(std::floor(ratio)), m);
}

// sum_{k=0}^{f} (m - length)!/(m - length - k)!
mpz_class extensions_within(int m, int length, int f_cap) {
    const int slots = m - length;
    mpz_class total = 0, term = 1;
    const int f = std::min(f_cap, slots);
    for (int k = 0; k <= f; ++k) {
        total += term;
        term *= slots - k;
    }
    return total;
}

mpz_class remaining_search_space(double incumbent, const std::vector<QueueSnapshotEntry>& queue,
                                 double lambda, int m) {
    mpz_class total = 0;
    for (const auto& entry : queue) {
        int f;
        if (lambda <= 0.0) {
            f = m - entry.length; // estimator unavailable; M-capped variant
        } else {
            assert(entry.bound < incumbent);
            f = static_cast<int>(std::floor((incumbent - entry.bound) / lambda));
        }
        total += extensions_within(m, entry.length, f);
    }
    return total;
}

mpz_class naive_total_evaluations(int m, int k_max) {
    if (k_max < 0 || k_max > m) throw ArgumentError("k_max out of range");
    mpz_class total = 0, term = 1;
    for (int k = 0; k <= k_max; ++k) {
        total += term;
        term *= m - k;
    }
    return total;
}

mpz_class symmetry_aware_total(int m, int k_max) {
    if (k_max < 0 || k_max > m) throw ArgumentError("k_max out of range");
    // 1 + sum_{k=1}^{K} C(m, k-1) * (m - k + 1); each term is the falling factorial
    // m!/(m-k)! divided by (k-1)!.
    mpz_class total = 1;
    for (int k = 1; k <= k_max; ++k) {
        mpz_class choose;
        mpz_bin_uiui(choose.get_mpz_t(), static_cast<unsigned long>(m),
                     static_cast<unsigned long>(k - 1));
        total += choose * (m - k + 1);
    }
    return total;
}

double curiosity(const PrefixStats& stats, double lambda) {
    assert(stats.captured_count > 0);
    const double support = static_cast<double>(stats.captured_count) / stats.n;
    return lower_bound(stats, lambda) / support;
}

} // namespace rulelist
