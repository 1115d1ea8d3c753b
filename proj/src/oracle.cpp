#include "rulelist/oracle.hpp"

#include <algorithm>
#include <limits>

namespace rulelist {

PrefixEvaluation evaluate_prefix(const AntecedentSet& antecedents, const BitVector& labels,
                                 std::span<const int> prefix) {
    const int n = labels.size();
    PrefixEvaluation eval;
    BitVector uncaptured(n, true);
    BitVector captured(n);
    for (int id : prefix) {
        captured.assign_and(uncaptured, antecedents.at(id).captures);
        const int n_captured = captured.count();
        const int n_positive = and_count(captured, labels);
        const bool prediction = 2 * n_positive >= n_captured;
        eval.predictions.push_back(prediction);
        eval.prefix_mistakes += prediction ? n_captured - n_positive : n_positive;
        eval.captured_count += n_captured;
        uncaptured.assign_andnot(uncaptured, captured);
    }
    const int n_remaining = uncaptured.count();
    const int n_remaining_pos = and_count(uncaptured, labels);
    eval.default_prediction = 2 * n_remaining_pos >= n_remaining;
    eval.default_mistakes =
        eval.default_prediction ? n_remaining - n_remaining_pos : n_remaining_pos;
    return eval;
}

mpz_class oracle_enumeration_count(int m, int k_cap) {
    return naive_total_evaluations(m, std::min(k_cap, m));
}

namespace {

struct Enumeration {
    const LabeledDataset* dataset;
    const BoundScale* scale;
    int k_cap;
    OracleResult result;
    std::int64_t best_num;
    std::vector<int> prefix;
    std::vector<bool> predictions;

    void consider(int prefix_mistakes, const BitVector& uncaptured) {
        ++result.evaluated_prefixes;
        const int n_remaining = uncaptured.count();
        const int n_remaining_pos = and_count(uncaptured, dataset->labels);
        const bool default_prediction = 2 * n_remaining_pos >= n_remaining;
        const int default_mistakes =
            default_prediction ? n_remaining - n_remaining_pos : n_remaining_pos;
        const int mistakes = prefix_mistakes + default_mistakes;
        const std::int64_t num =
            scale->bound_num(mistakes, static_cast<std::int64_t>(prefix.size()));
        if (num > best_num) return;
        if (num < best_num) {
            best_num = num;
            result.witnesses.clear();
            result.min_mistakes = mistakes;
            result.min_length = static_cast<int>(prefix.size());
        }
        RuleListModel model;
        model.prefix = prefix;
        model.predictions = predictions;
        model.default_prediction = default_prediction;
        result.witnesses.push_back(std::move(model));
    }

    void extend(int prefix_mistakes, const BitVector& uncaptured) {
        consider(prefix_mistakes, uncaptured);
        if (static_cast<int>(prefix.size()) >= k_cap) return;
        const int m = static_cast<int>(dataset->antecedents.size());
        BitVector captured(dataset->n_samples);
        BitVector next_uncaptured(dataset->n_samples);
        for (int s = 0; s < m; ++s) {
            if (std::find(prefix.begin(), prefix.end(), s) != prefix.end()) continue;
            captured.assign_and(uncaptured, dataset->antecedents[s].captures);
            const int n_captured = captured.count();
            const int n_positive = and_count(captured, dataset->labels);
            const bool prediction = 2 * n_positive >= n_captured;
            const int rule_mistakes = prediction ? n_captured - n_positive : n_positive;
            next_uncaptured.assign_andnot(uncaptured, captured);
            prefix.push_back(s);
            predictions.push_back(prediction);
            extend(prefix_mistakes + rule_mistakes, next_uncaptured);
            prefix.pop_back();
            predictions.pop_back();
        }
    }
};

} // namespace

OracleResult brute_force(const LabeledDataset& dataset, Rational lambda,
                         std::optional<int> k_cap_opt) {
    const int m = static_cast<int>(dataset.antecedents.size());
    if (m == 0) throw EmptyModelError("dataset has no antecedents");
    int k_cap;
    if (k_cap_opt) {
        k_cap = std::min(*k_cap_opt, m);
    } else if (lambda.is_zero()) {
        k_cap = m;
    } else {
        // Simple upper bound on optimal prefix length: floor(1 / (2 lambda)).
        k_cap = static_cast<int>(std::min<std::int64_t>(lambda.den / (2 * lambda.num), m));
    }
    const mpz_class count = oracle_enumeration_count(m, k_cap);
    if (count > 10000000)
        throw BudgetError("oracle refuses: enumeration of " + count.get_str() +
                          " prefixes exceeds the 10^7 budget");

    const BoundScale scale(dataset.n_samples, lambda);
    Enumeration walk;
    walk.dataset = &dataset;
    walk.scale = &scale;
    walk.k_cap = k_cap;
    walk.best_num = std::numeric_limits<std::int64_t>::max();

    BitVector all(dataset.n_samples, true);
    walk.extend(0, all);

    walk.result.min_objective_num = walk.best_num;
    walk.result.min_objective = scale.to_real(walk.best_num);
    return walk.result;
}

} // namespace rulelist
