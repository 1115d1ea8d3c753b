#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "rulelist/bounds.hpp"
#include "rulelist/errors.hpp"

namespace rulelist {

// Per-prefix search metadata. All mistake-like quantities are integer counts; the
// real-valued bounds are formed at use sites through a BoundScale.
struct TrieNode {
    int antecedent_id = -1; // last antecedent of the prefix; -1 at the root
    int depth = 0;          // K
    int prefix_mistakes = 0;
    int minority_uncaptured = 0; // numerator count of b0
    int default_mistakes = 0;
    int captured_count = 0;
    bool prediction = false;
    bool default_prediction = false;
    bool marked = false; // lazy-deletion marker; set only on detached leaves
    bool done = false;   // children have been evaluated

    TrieNode* parent = nullptr;
    std::vector<std::pair<int, TrieNode*>> children; // sorted by antecedent id

    bool is_leaf() const { return children.empty(); }

    std::int64_t bound_num(const BoundScale& scale) const {
        return scale.bound_num(prefix_mistakes, depth);
    }
    std::int64_t augmented_bound_num(const BoundScale& scale) const {
        return scale.bound_num(prefix_mistakes + minority_uncaptured, depth);
    }
    std::int64_t objective_num(const BoundScale& scale) const {
        return scale.bound_num(prefix_mistakes + default_mistakes, depth);
    }
};

struct NodeMeta {
    int prefix_mistakes = 0;
    int minority_uncaptured = 0;
    int default_mistakes = 0;
    int captured_count = 0;
    bool prediction = false;
    bool default_prediction = false;
};

// Prefix tree caching evaluated prefixes. Leaves referenced by the physical queue are
// never freed directly: delete_subtree detaches and marks them, and the queue frees
// them as they surface (release_marked).
class Trie {
public:
    Trie();
    ~Trie();
    Trie(const Trie&) = delete;
    Trie& operator=(const Trie&) = delete;

    TrieNode* root() { return root_; }
    const TrieNode* root() const { return root_; }

    TrieNode* insert_child(TrieNode* parent, int antecedent_id, const NodeMeta& meta);
    // Path-based insert; an empty path addresses the root. Duplicate paths are
    // rejected (callers must delete first).
    TrieNode* insert(std::span<const int> path, const NodeMeta& meta);

    TrieNode* find(std::span<const int> path);

    // Removes the node and its descendants from the tree. Leaves are detached and
    // marked rather than freed; internal nodes are freed. Returns the number of
    // nodes removed from the tree view.
    int delete_subtree(TrieNode* node);
    int delete_subtree(std::span<const int> path); // unknown path -> 0

    // Depth-first sweep deleting subtrees whose equivalent-points-augmented bound
    // reaches the threshold, then prunes childless internal nodes upwards.
    int garbage_collect(std::int64_t threshold_num, const BoundScale& scale);

    // Deletes a childless non-root chain upwards (a just-popped leaf that produced
    // no viable children, or an internal node whose children were all removed).
    void prune_up(TrieNode* node);

    // Frees a marked, detached leaf once the queue pops it.
    void release_marked(TrieNode* node);

    std::size_t node_count() const { return alive_; }   // includes detached marked leaves
    std::size_t tree_size() const { return alive_ - marked_alive_; }
    std::size_t marked_count() const { return marked_alive_; }
    std::uint64_t total_inserts() const { return total_inserts_; }
    std::uint64_t total_removals() const { return total_removals_; }

    // Invoked whenever a queue-owned leaf is detached and marked (the solver keeps
    // its remaining-search-space estimator in sync through this).
    void set_leaf_detach_hook(std::function<void(TrieNode*)> hook) {
        leaf_detach_hook_ = std::move(hook);
    }

    static std::vector<int> path_of(const TrieNode* node);

    // Textual depth-first listing `path, K, bound, objective, marker` for golden tests.
    void dump(std::ostream& out, const BoundScale& scale) const;

private:
    TrieNode* child_of(TrieNode* parent, int antecedent_id);
    void free_recursive(TrieNode* node);
    int detach_subtree(TrieNode* node); // mark leaves, free internals
    int sweep(TrieNode* node, std::int64_t threshold_num, const BoundScale& scale);

    std::function<void(TrieNode*)> leaf_detach_hook_;
    TrieNode* root_ = nullptr;
    std::size_t alive_ = 0;
    std::size_t marked_alive_ = 0;
    std::uint64_t total_inserts_ = 0;
    std::uint64_t total_removals_ = 0;
};

} // namespace rulelist
