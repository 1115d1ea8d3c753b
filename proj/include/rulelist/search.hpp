#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rulelist/bounds.hpp"
#include "rulelist/trie.hpp"

namespace rulelist {

enum class SearchPolicy { Bfs, Dfs, LowerBound, Objective, Curiosity };

const char* to_string(SearchPolicy policy);
SearchPolicy parse_policy(const std::string& text);

// One physical worklist ordering the frontier. Pop order is (priority ascending,
// insertion counter ascending); priorities are immutable once enqueued. Delete-marked
// leaves are skipped and physically freed as they surface.
class SearchQueue {
public:
    SearchQueue(SearchPolicy policy, Trie& trie, const BoundScale& scale);

    // count_insertion = false re-enqueues a popped node without touching the
    // insertion counter (used when a cap interrupts a pop).
    void push(TrieNode* node, bool count_insertion = true);

    // First live leaf in priority order, or nullptr when the frontier is exhausted.
    TrieNode* pop_live();

    void for_each_live(const std::function<void(const TrieNode*)>& fn) const;

    std::size_t physical_size() const { return heap_.size(); }
    std::size_t logical_size() const { return heap_.size() - trie_->marked_count(); }
    std::uint64_t total_insertions() const { return total_insertions_; }

    // Logical-queue snapshot of (length, lower bound) pairs for the search-space
    // estimator and the optimality gap.
    std::vector<QueueSnapshotEntry> snapshot() const;
    std::int64_t min_live_augmented_bound() const; // INT64_MAX when logically empty

    ~SearchQueue(); // frees any marked leaves still enqueued

private:
    struct Entry {
        double priority;
        std::uint64_t seq;
        TrieNode* node;
        bool operator>(const Entry& other) const {
            if (priority != other.priority) return priority > other.priority;
            return seq > other.seq;
        }
    };

    double priority_of(const TrieNode* node) const;

    SearchPolicy policy_;
    Trie* trie_;
    const BoundScale* scale_;
    std::vector<Entry> heap_; // min-heap via operator>
    std::uint64_t next_seq_ = 0;
    std::uint64_t total_insertions_ = 0;
};

} // namespace rulelist
