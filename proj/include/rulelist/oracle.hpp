#pragma once

#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "rulelist/bounds.hpp"
#include "rulelist/dataset.hpp"
#include "rulelist/model.hpp"

namespace rulelist {

// From-scratch evaluation of one prefix: walks the rules in order over the full
// dataset, forcing per-rule and default predictions empirically (ties predict 1).
// Shares nothing with the solver's incremental path; this is the oracle for the
// exactness tests.
struct PrefixEvaluation {
    std::vector<bool> predictions;
    bool default_prediction = true;
    int prefix_mistakes = 0;
    int default_mistakes = 0;
    int captured_count = 0;

    int total_mistakes() const { return prefix_mistakes + default_mistakes; }
};

PrefixEvaluation evaluate_prefix(const AntecedentSet& antecedents, const BitVector& labels,
                                 std::span<const int> prefix);

struct OracleResult {
    int min_mistakes = 0;
    int min_length = 0;
    double min_objective = 0.0;
    std::int64_t min_objective_num = 0; // numerator over N * lambda.den
    std::vector<RuleListModel> witnesses;
    std::uint64_t evaluated_prefixes = 0;
};

// Number of ordered selections of at most k_cap out of m antecedents.
mpz_class oracle_enumeration_count(int m, int k_cap);

// Exhaustively evaluates every ordered selection of <= k_cap antecedents and returns
// the exact minimum objective with all rule lists attaining it. k_cap defaults to
// min(floor(1/(2*lambda)), M). Refuses when the enumeration exceeds 10^7 prefixes.
OracleResult brute_force(const LabeledDataset& dataset, Rational lambda,
                         std::optional<int> k_cap = std::nullopt);

} // namespace rulelist
