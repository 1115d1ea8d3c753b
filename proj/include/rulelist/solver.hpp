#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "rulelist/bounds.hpp"
#include "rulelist/dataset.hpp"
#include "rulelist/model.hpp"
#include "rulelist/search.hpp"

namespace rulelist {

// Each flag disables exactly one optimization or bound.
struct Ablations {
    bool no_priority = false;       // run breadth-first instead of the configured policy
    bool no_support_bounds = false; // skip the (accurate) antecedent support checks
    bool no_lookahead = false;      // drop the +lambda tightening; GC threshold becomes Rc
    bool no_symmap = false;         // insert every permutation
    bool no_equiv_points = false;   // treat b0 as zero
};

struct SolverConfig {
    Rational lambda;
    SearchPolicy policy = SearchPolicy::LowerBound;
    std::optional<std::size_t> max_nodes;
    std::optional<double> max_seconds;
    Ablations ablations;
    int verbosity = 0;
    int trace_sample_interval = 4096;
};

enum class SolveStatus { CertifiedOptimal, IncompleteMemory, IncompleteTime };
const char* to_string(SolveStatus status);

struct SkipCounters {
    std::uint64_t support = 0;
    std::uint64_t accurate_support = 0;
    std::uint64_t hierarchical = 0;
    std::uint64_t lookahead = 0;
    std::uint64_t symmap_blocked = 0;
    std::uint64_t inserted = 0;
};

struct SolverCounters {
    std::uint64_t lower_bound_evaluations = 0;
    std::uint64_t queue_insertions = 0;
    std::uint64_t incumbent_updates = 0;
    std::uint64_t pops = 0;
    std::size_t max_physical_queue = 0;
    std::size_t max_logical_queue = 0;
    std::size_t trie_node_peak = 0;
    int max_evaluated_prefix_length = 0;
    SkipCounters skips;
};

struct TraceRecord {
    double elapsed_s = 0.0;
    double incumbent_objective = 0.0;
    double popped_lower_bound = 0.0;
    int incumbent_length = 0;
    std::size_t logical_queue = 0;
    std::size_t physical_queue = 0;
    std::size_t trie_nodes = 0;
    long log10_remaining = -1; // floor(log10 Gamma); -1 when the space is empty
};

struct SolverResult {
    RuleListModel best;
    int best_mistakes = 0;
    double best_objective = 0.0;
    std::int64_t best_objective_num = 0; // exact numerator over N * lambda.den
    SolveStatus status = SolveStatus::CertifiedOptimal;
    double optimality_gap = 0.0;
    SolverCounters counters;
};

// Instrumentation hooks for invariant and replay tests; every method defaults to a
// no-op. Paths exclude the child id unless stated.
class SolverObserver {
public:
    virtual ~SolverObserver() = default;
    virtual void on_pop(const std::vector<int>& path) { (void)path; }
    // After the incremental lower bound of a child is computed (support checks passed).
    virtual void on_child_bound(const std::vector<int>& parent_path, int child_id,
                                int parent_mistakes, int child_mistakes) {
        (void)parent_path, (void)child_id, (void)parent_mistakes, (void)child_mistakes;
    }
    // After the child's objective and b0 are computed (hierarchical bound passed).
    virtual void on_child_objective(const std::vector<int>& parent_path, int child_id,
                                    int child_mistakes, int default_mistakes, int b0_count,
                                    bool prediction, bool default_prediction) {
        (void)parent_path, (void)child_id, (void)child_mistakes, (void)default_mistakes,
            (void)b0_count, (void)prediction, (void)default_prediction;
    }
    virtual void on_insert(const std::vector<int>& path) { (void)path; }
    virtual void on_delete_subtree(const std::vector<int>& path) { (void)path; }
    virtual void on_trace_sample(const TraceRecord& record, const mpz_class& remaining) {
        (void)record, (void)remaining;
    }
};

SolverResult solve(const LabeledDataset& dataset, const SolverConfig& config,
                   const std::function<void(const TraceRecord&)>& trace_sink = {},
                   SolverObserver* observer = nullptr);

} // namespace rulelist
