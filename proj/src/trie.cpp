#include "rulelist/trie.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace rulelist {

Trie::Trie() {
    root_ = new TrieNode();
    alive_ = 1;
    total_inserts_ = 1;
}

Trie::~Trie() {
    free_recursive(root_);
    // Detached marked leaves are owned by the queue at this point.
}

void Trie::free_recursive(TrieNode* node) {
    for (auto& [id, child] : node->children) free_recursive(child);
    delete node;
}

TrieNode* Trie::child_of(TrieNode* parent, int antecedent_id) {
    auto it = std::lower_bound(parent->children.begin(), parent->children.end(), antecedent_id,
                               [](const auto& entry, int id) { return entry.first < id; });
    if (it == parent->children.end() || it->first != antecedent_id) return nullptr;
    return it->second;
}

TrieNode* Trie::insert_child(TrieNode* parent, int antecedent_id, const NodeMeta& meta) {
    assert(parent);
    auto it = std::lower_bound(parent->children.begin(), parent->children.end(), antecedent_id,
                               [](const auto& entry, int id) { return entry.first < id; });
    if (it != parent->children.end() && it->first == antecedent_id)
        throw ArgumentError("trie: path already present; delete it first");
    TrieNode* node = new TrieNode();
    node->antecedent_id = antecedent_id;
    node->depth = parent->depth + 1;
    node->prefix_mistakes = meta.prefix_mistakes;
    node->minority_uncaptured = meta.minority_uncaptured;
    node->default_mistakes = meta.default_mistakes;
    node->captured_count = meta.captured_count;
    node->prediction = meta.prediction;
    node->default_prediction = meta.default_prediction;
    node->parent = parent;
    parent->children.insert(it, {antecedent_id, node});
    ++alive_;
    ++total_inserts_;
    return node;
}

TrieNode* Trie::insert(std::span<const int> path, const NodeMeta& meta) {
    if (path.empty()) {
        root_->prefix_mistakes = meta.prefix_mistakes;
        root_->minority_uncaptured = meta.minority_uncaptured;
        root_->default_mistakes = meta.default_mistakes;
        root_->captured_count = meta.captured_count;
        root_->prediction = meta.prediction;
        root_->default_prediction = meta.default_prediction;
        return root_;
    }
    TrieNode* parent = find(path.first(path.size() - 1));
    if (!parent) throw ArgumentError("trie: parent path does not exist");
    return insert_child(parent, path.back(), meta);
}

TrieNode* Trie::find(std::span<const int> path) {
    TrieNode* node = root_;
    for (int id : path) {
        node = child_of(node, id);
        if (!node) return nullptr;
    }
    return node;
}

// Marks queue-owned leaves and frees internal descendants; returns the number of
// nodes removed from the tree view.
int Trie::detach_subtree(TrieNode* node) {
    if (node->is_leaf()) {
        node->marked = true;
        node->parent = nullptr;
        ++marked_alive_;
        if (leaf_detach_hook_) leaf_detach_hook_(node);
        return 1;
    }
    int removed = 1;
    for (auto& [id, child] : node->children) removed += detach_subtree(child);
    node->children.clear();
    delete node;
    --alive_;
    ++total_removals_;
    return removed;
}

int Trie::delete_subtree(TrieNode* node) {
    assert(node && node != root_);
    // Unlink from the parent first so the subtree is unreachable.
    TrieNode* parent = node->parent;
    auto it = std::find_if(parent->children.begin(), parent->children.end(),
                           [&](const auto& entry) { return entry.second == node; });
    assert(it != parent->children.end());
    parent->children.erase(it);
    return detach_subtree(node);
}

int Trie::delete_subtree(std::span<const int> path) {
    TrieNode* node = find(path);
    if (!node || node == root_) return 0;
    return delete_subtree(node);
}

void Trie::prune_up(TrieNode* node) {
    while (node && node != root_ && node->is_leaf() && !node->marked) {
        TrieNode* parent = node->parent;
        auto it = std::find_if(parent->children.begin(), parent->children.end(),
                               [&](const auto& entry) { return entry.second == node; });
        assert(it != parent->children.end());
        parent->children.erase(it);
        delete node;
        --alive_;
        ++total_removals_;
        node = parent;
    }
}

void Trie::release_marked(TrieNode* node) {
    assert(node->marked && node->parent == nullptr);
    delete node;
    --alive_;
    --marked_alive_;
    ++total_removals_;
}

int Trie::sweep(TrieNode* node, std::int64_t threshold_num, const BoundScale& scale) {
    int removed = 0;
    for (std::size_t i = 0; i < node->children.size();) {
        TrieNode* child = node->children[i].second;
        if (child->augmented_bound_num(scale) >= threshold_num) {
            removed += delete_subtree(child); // erases children[i]
        } else {
            removed += sweep(child, threshold_num, scale);
            ++i;
        }
    }
    return removed;
}

int Trie::garbage_collect(std::int64_t threshold_num, const BoundScale& scale) {
    int removed = sweep(root_, threshold_num, scale);

    // Prune upwards: drop internal nodes the sweep left childless. Done nodes with
    // no children can never produce work again.
    std::vector<TrieNode*> stack{root_};
    std::vector<TrieNode*> postorder;
    while (!stack.empty()) {
        TrieNode* node = stack.back();
        stack.pop_back();
        postorder.push_back(node);
        for (auto& [id, child] : node->children) stack.push_back(child);
    }
    for (auto it = postorder.rbegin(); it != postorder.rend(); ++it) {
        TrieNode* node = *it;
        if (node == root_ || !node->is_leaf() || !node->done) continue;
        TrieNode* parent = node->parent;
        auto entry = std::find_if(parent->children.begin(), parent->children.end(),
                                  [&](const auto& e) { return e.second == node; });
        parent->children.erase(entry);
        delete node;
        --alive_;
        ++total_removals_;
        ++removed;
    }
    return removed;
}

std::vector<int> Trie::path_of(const TrieNode* node) {
    std::vector<int> path;
    for (const TrieNode* n = node; n && n->antecedent_id >= 0; n = n->parent)
        path.push_back(n->antecedent_id);
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

void dump_node(std::ostream& out, const TrieNode* node, std::vector<int>& path,
               const BoundScale& scale) {
    out << '[';
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out << ' ';
        out << path[i];
    }
    out << "], " << node->depth << ", " << scale.to_real(scale.bound_num(node->prefix_mistakes, node->depth))
        << ", " << scale.to_real(scale.bound_num(node->prefix_mistakes + node->default_mistakes, node->depth))
        << ", " << (node->marked ? 1 : 0) << '\n';
    for (const auto& [id, child] : node->children) {
        path.push_back(id);
        dump_node(out, child, path, scale);
        path.pop_back();
    }
}

} // namespace

void Trie::dump(std::ostream& out, const BoundScale& scale) const {
    std::vector<int> path;
    dump_node(out, root_, path, scale);
}

} // namespace rulelist
