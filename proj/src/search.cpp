#include "rulelist/search.hpp"

#include <algorithm>
#include <limits>

namespace rulelist {

const char* to_string(SearchPolicy policy) {
    switch (policy) {
    case SearchPolicy::Bfs: return "bfs";
    case SearchPolicy::Dfs: return "dfs";
    case SearchPolicy::LowerBound: return "lower_bound";
    case SearchPolicy::Objective: return "objective";
    case SearchPolicy::Curiosity: return "curiosity";
    }
    return "?";
}

SearchPolicy parse_policy(const std::string& text) {
    if (text == "bfs") return SearchPolicy::Bfs;
    if (text == "dfs") return SearchPolicy::Dfs;
    if (text == "lower_bound") return SearchPolicy::LowerBound;
    if (text == "objective") return SearchPolicy::Objective;
    if (text == "curiosity") return SearchPolicy::Curiosity;
    throw ArgumentError("unknown search policy '" + text + "'");
}

SearchQueue::SearchQueue(SearchPolicy policy, Trie& trie, const BoundScale& scale)
    : policy_(policy), trie_(&trie), scale_(&scale) {}

SearchQueue::~SearchQueue() {
    for (auto& entry : heap_)
        if (entry.node->marked) trie_->release_marked(entry.node);
}

double SearchQueue::priority_of(const TrieNode* node) const {
    switch (policy_) {
    case SearchPolicy::Bfs: return node->depth;
    case SearchPolicy::Dfs: return -node->depth;
    case SearchPolicy::LowerBound: return scale_->to_real(node->augmented_bound_num(*scale_));
    case SearchPolicy::Objective: return scale_->to_real(node->objective_num(*scale_));
    case SearchPolicy::Curiosity: {
        if (node->captured_count == 0) return 0.0; // root pops first either way
        PrefixStats stats{node->depth, node->prefix_mistakes, node->captured_count, scale_->n()};
        return curiosity(stats, scale_->lambda().value());
    }
    }
    return 0.0;
}

void SearchQueue::push(TrieNode* node, bool count_insertion) {
    heap_.push_back(Entry{priority_of(node), next_seq_++, node});
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
    if (count_insertion) ++total_insertions_;
}

void SearchQueue::for_each_live(const std::function<void(const TrieNode*)>& fn) const {
    for (const auto& entry : heap_)
        if (!entry.node->marked) fn(entry.node);
}

TrieNode* SearchQueue::pop_live() {
    while (!heap_.empty()) {
        std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
        TrieNode* node = heap_.back().node;
        heap_.pop_back();
        if (node->marked) {
            trie_->release_marked(node);
            continue;
        }
        return node;
    }
    return nullptr;
}

std::vector<QueueSnapshotEntry> SearchQueue::snapshot() const {
    std::vector<QueueSnapshotEntry> out;
    out.reserve(logical_size());
    for (const auto& entry : heap_) {
        if (entry.node->marked) continue;
        out.push_back(QueueSnapshotEntry{entry.node->depth,
                                         scale_->to_real(entry.node->bound_num(*scale_))});
    }
    return out;
}

std::int64_t SearchQueue::min_live_augmented_bound() const {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& entry : heap_) {
        if (entry.node->marked) continue;
        best = std::min(best, entry.node->augmented_bound_num(*scale_));
    }
    return best;
}

} // namespace rulelist
