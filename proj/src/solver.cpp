#include "rulelist/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <iostream>
#include <limits>
#include <map>

#include "rulelist/symmap.hpp"
#include "rulelist/trie.hpp"

namespace rulelist {

const char* to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::CertifiedOptimal: return "certified_optimal";
    case SolveStatus::IncompleteMemory: return "incomplete_memory";
    case SolveStatus::IncompleteTime: return "incomplete_time";
    }
    return "?";
}

namespace {

// Incrementally maintained upper bound on remaining prefix evaluations. Queue entries
// are bucketed by (length, f) where f = min(floor((Rc - b)/lambda), M - L); terms are
// memoized since they depend only on the bucket. Rebuilt when the incumbent improves.
class RemainingEstimator {
public:
    RemainingEstimator(int m, const BoundScale& scale) : m_(m), scale_(&scale) {}

    void set_incumbent(std::int64_t rc_num, const SearchQueue* queue) {
        rc_num_ = rc_num;
        counts_.clear();
        if (queue)
            queue->for_each_live([this](const TrieNode* node) { ++counts_[bucket(node)]; });
    }

    void add(const TrieNode* node) { ++counts_[bucket(node)]; }

    void remove(const TrieNode* node) {
        auto it = counts_.find(bucket(node));
        assert(it != counts_.end() && it->second > 0);
        if (--it->second == 0) counts_.erase(it);
    }

    mpz_class value() const {
        mpz_class total = 0;
        for (const auto& [key, count] : counts_) {
            if (count == 0) continue;
            auto term = terms_.find(key);
            if (term == terms_.end())
                term = terms_.emplace(key, extensions_within(m_, key.first, key.second)).first;
            total += term->second * count;
        }
        return total;
    }

private:
    std::pair<int, int> bucket(const TrieNode* node) const {
        const int slots = m_ - node->depth;
        int f;
        if (scale_->lambda_is_zero()) {
            f = slots; // estimator unavailable; M-capped variant
        } else {
            const std::int64_t diff = rc_num_ - node->bound_num(*scale_);
            f = diff <= 0 ? 0
                          : static_cast<int>(std::min<std::int64_t>(
                                scale_->floor_div_lambda(diff), slots));
        }
        return {node->depth, f};
    }

    int m_;
    const BoundScale* scale_;
    std::int64_t rc_num_ = 0;
    std::map<std::pair<int, int>, long> counts_;
    mutable std::map<std::pair<int, int>, mpz_class> terms_;
};

long floor_log10(const mpz_class& value) {
    if (value <= 0) return -1;
    std::size_t digits = mpz_sizeinbase(value.get_mpz_t(), 10);
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, digits - 1);
    if (value < power) --digits; // sizeinbase may overestimate by one
    return static_cast<long>(digits) - 1;
}

RuleListModel snapshot_model(const TrieNode* child_parent, int child_id, bool child_prediction,
                             bool default_prediction) {
    RuleListModel model;
    for (const TrieNode* n = child_parent; n && n->antecedent_id >= 0; n = n->parent) {
        model.prefix.push_back(n->antecedent_id);
        model.predictions.push_back(n->prediction);
    }
    std::reverse(model.prefix.begin(), model.prefix.end());
    std::reverse(model.predictions.begin(), model.predictions.end());
    model.prefix.push_back(child_id);
    model.predictions.push_back(child_prediction);
    model.default_prediction = default_prediction;
    return model;
}

} // namespace

SolverResult solve(const LabeledDataset& dataset, const SolverConfig& config,
                   const std::function<void(const TraceRecord&)>& trace_sink,
                   SolverObserver* observer) {
    const int n = dataset.n_samples;
    const int m = static_cast<int>(dataset.antecedents.size());
    if (m == 0) throw EmptyModelError("dataset has no antecedents");
    if (n <= 0) throw ArgumentError("dataset has no samples");
    for (const auto& a : dataset.antecedents)
        if (a.captures.size() != n)
            throw SchemaError("antecedent '" + a.name + "' capture length mismatch");

    if (config.trace_sample_interval < 1)
        throw ArgumentError("trace_sample_interval must be positive");
    const BoundScale scale(n, config.lambda);
    const Ablations& ab = config.ablations;
    if (dataset.mined_lambda_min > config.lambda.value() && config.verbosity > 0)
        std::cerr << "warning: antecedents mined with lambda_min " << dataset.mined_lambda_min
                  << " > lambda " << config.lambda.value()
                  << "; the mining-time support filter is weaker than the theory allows\n";

    const std::int64_t per_rule = scale.per_rule();
    const std::int64_t lookahead_step = ab.no_lookahead ? 0 : per_rule;
    const SearchPolicy policy = ab.no_priority ? SearchPolicy::Bfs : config.policy;

    // Incumbent: the empty rule list (majority default, ties predicting 1).
    const int n_pos = dataset.labels.count();
    const bool root_default = 2 * n_pos >= n;
    const int root_default_mistakes = root_default ? n - n_pos : n_pos;
    const int root_b0 = ab.no_equiv_points ? 0 : dataset.minority_mask.count();

    RuleListModel best;
    best.default_prediction = root_default;
    int best_mistakes = root_default_mistakes;
    std::int64_t rc_num = scale.bound_num(best_mistakes, 0);

    Trie trie;
    NodeMeta root_meta;
    root_meta.minority_uncaptured = root_b0;
    root_meta.default_mistakes = root_default_mistakes;
    root_meta.default_prediction = root_default;
    trie.insert(std::span<const int>{}, root_meta);

    SearchQueue queue(policy, trie, scale);
    SymmetryMap symmap;
    RemainingEstimator estimator(m, scale);
    estimator.set_incumbent(rc_num, nullptr);
    trie.set_leaf_detach_hook([&estimator](TrieNode* node) { estimator.remove(node); });

    queue.push(trie.root());
    estimator.add(trie.root());

    SolverCounters counters;
    counters.max_physical_queue = 1;
    counters.max_logical_queue = 1;
    counters.trie_node_peak = trie.node_count();

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&start] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    double last_popped_bound = 0.0;
    auto emit_trace = [&](bool force) {
        if (!trace_sink && !observer) return;
        TraceRecord record;
        record.elapsed_s = elapsed();
        record.incumbent_objective = scale.to_real(rc_num);
        record.popped_lower_bound = last_popped_bound;
        record.incumbent_length = best.length();
        record.logical_queue = queue.logical_size();
        record.physical_queue = queue.physical_size();
        record.trie_nodes = trie.node_count();
        const mpz_class remaining = estimator.value();
        record.log10_remaining = floor_log10(remaining);
        if (trace_sink) trace_sink(record);
        if (observer) observer->on_trace_sample(record, remaining);
        (void)force;
    };
    emit_trace(true); // initial record: the empty rule list's state

    BitVector uncaptured(n), captured(n), remainder(n);
    std::vector<char> in_path(m, 0);
    SolveStatus status = SolveStatus::CertifiedOptimal;

    while (TrieNode* parent = queue.pop_live()) {
        if (config.max_seconds && elapsed() > *config.max_seconds) {
            queue.push(parent, /*count_insertion=*/false);
            status = SolveStatus::IncompleteTime;
            break;
        }
        estimator.remove(parent);
        ++counters.pops;
        last_popped_bound = scale.to_real(parent->bound_num(scale));
        if (observer) observer->on_pop(Trie::path_of(parent));

        // Re-check against the current incumbent: the bound held at push time, but the
        // incumbent may have improved since.
        if (parent->augmented_bound_num(scale) + lookahead_step >= rc_num) {
            trie.prune_up(parent);
            if (counters.pops % static_cast<std::uint64_t>(config.trace_sample_interval) == 0)
                emit_trace(false);
            continue;
        }

        const std::vector<int> parent_path = Trie::path_of(parent);
        uncaptured = BitVector(n, true);
        for (int id : parent_path) {
            uncaptured.assign_andnot(uncaptured, dataset.antecedents[id].captures);
            in_path[id] = 1;
        }
        const int parent_depth = parent->depth;
        const int child_depth = parent_depth + 1;
        bool incumbent_improved = false;

        for (int s = 0; s < m; ++s) {
            if (in_path[s]) continue;

            captured.assign_and(uncaptured, dataset.antecedents[s].captures);
            const int n_captured = captured.count();
            // Lower bound on antecedent support: n_v / N < lambda, exactly.
            if (!ab.no_support_bounds &&
                static_cast<std::int64_t>(n_captured) * config.lambda.den < per_rule) {
                ++counters.skips.support;
                continue;
            }
            const int n_captured_pos = and_count(captured, dataset.labels);
            const bool prediction = 2 * n_captured_pos >= n_captured;
            const int n_correct = prediction ? n_captured_pos : n_captured - n_captured_pos;
            // Lower bound on accurate antecedent support.
            if (!ab.no_support_bounds &&
                static_cast<std::int64_t>(n_correct) * config.lambda.den < per_rule) {
                ++counters.skips.accurate_support;
                continue;
            }

            const int child_mistakes = parent->prefix_mistakes + (n_captured - n_correct);
            ++counters.lower_bound_evaluations;
            counters.max_evaluated_prefix_length =
                std::max(counters.max_evaluated_prefix_length, child_depth);
            if (observer)
                observer->on_child_bound(parent_path, s, parent->prefix_mistakes, child_mistakes);

            const std::int64_t child_bound_num = scale.bound_num(child_mistakes, child_depth);
            if (child_bound_num >= rc_num) { // hierarchical objective lower bound
                ++counters.skips.hierarchical;
                continue;
            }

            remainder.assign_andnot(uncaptured, captured);
            const int n_remaining = remainder.count();
            const int n_remaining_pos = and_count(remainder, dataset.labels);
            const bool default_prediction = 2 * n_remaining_pos >= n_remaining;
            const int default_mistakes =
                default_prediction ? n_remaining - n_remaining_pos : n_remaining_pos;
            const int b0_count =
                ab.no_equiv_points ? 0 : and_count(remainder, dataset.minority_mask);
            if (observer)
                observer->on_child_objective(parent_path, s, child_mistakes, default_mistakes,
                                             b0_count, prediction, default_prediction);

            const std::int64_t objective_num =
                scale.bound_num(child_mistakes + default_mistakes, child_depth);
            if (objective_num < rc_num) {
                rc_num = objective_num;
                best_mistakes = child_mistakes + default_mistakes;
                best = snapshot_model(parent, s, prediction, default_prediction);
                ++counters.incumbent_updates;
                incumbent_improved = true;
                // The estimator's buckets key on the incumbent; re-bucket now so that
                // adds and removals later in this child loop stay consistent.
                estimator.set_incumbent(rc_num, &queue);
            }

            // Equivalent points bound with one-step lookahead.
            if (scale.bound_num(child_mistakes + b0_count, child_depth) + lookahead_step >=
                rc_num) {
                ++counters.skips.lookahead;
                continue;
            }

            if (!ab.no_symmap) {
                std::vector<int> child_path = parent_path;
                child_path.push_back(s);
                MapOutcome outcome =
                    symmap.check_and_insert(child_path, child_mistakes + b0_count);
                if (outcome.decision == MapDecision::Blocked) {
                    ++counters.skips.symmap_blocked;
                    continue;
                }
                if (outcome.decision == MapDecision::ReplacedWorse) {
                    // The prior permutation's subtree may already have been garbage
                    // collected; the map entry outlives it by design.
                    if (TrieNode* victim = trie.find(outcome.evicted)) {
                        if (observer) observer->on_delete_subtree(outcome.evicted);
                        trie.delete_subtree(victim);
                    }
                }
            }

            NodeMeta meta;
            meta.prefix_mistakes = child_mistakes;
            meta.minority_uncaptured = b0_count;
            meta.default_mistakes = default_mistakes;
            meta.captured_count = parent->captured_count + n_captured;
            meta.prediction = prediction;
            meta.default_prediction = default_prediction;
            TrieNode* child = trie.insert_child(parent, s, meta);
            ++counters.skips.inserted;
            queue.push(child);
            estimator.add(child);
            if (observer) {
                std::vector<int> child_path = parent_path;
                child_path.push_back(s);
                observer->on_insert(child_path);
            }

            counters.trie_node_peak = std::max(counters.trie_node_peak, trie.node_count());
            counters.max_physical_queue =
                std::max(counters.max_physical_queue, queue.physical_size());
            counters.max_logical_queue =
                std::max(counters.max_logical_queue, queue.logical_size());

            if (config.max_nodes && trie.node_count() > *config.max_nodes) {
                status = SolveStatus::IncompleteMemory;
                break;
            }
        }

        for (int id : parent_path) in_path[id] = 0;
        if (parent->is_leaf())
            trie.prune_up(parent);
        else
            parent->done = true;

        // GC only on incumbent improvement, deferred past the child loop so the
        // sweep cannot free the parent mid-iteration.
        if (incumbent_improved) trie.garbage_collect(rc_num - lookahead_step, scale);

        if (status != SolveStatus::CertifiedOptimal) break;
        if (incumbent_improved ||
            counters.pops % static_cast<std::uint64_t>(config.trace_sample_interval) == 0)
            emit_trace(false);
    }

    SolverResult result;
    result.best = best;
    result.best_mistakes = best_mistakes;
    result.best_objective_num = rc_num;
    result.best_objective = scale.to_real(rc_num);
    result.status = status;
    if (status == SolveStatus::CertifiedOptimal) {
        result.optimality_gap = 0.0;
    } else {
        const std::int64_t min_bound = queue.min_live_augmented_bound();
        result.optimality_gap =
            min_bound == std::numeric_limits<std::int64_t>::max()
                ? 0.0
                : scale.to_real(std::max<std::int64_t>(0, rc_num - min_bound));
    }
    counters.queue_insertions = queue.total_insertions();
    result.counters = counters;
    result.counters.max_physical_queue =
        std::max(result.counters.max_physical_queue, queue.physical_size());
    emit_trace(true); // final record
    trie.set_leaf_detach_hook({});
    return result;
}

} // namespace rulelist
