#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "rulelist/errors.hpp"

namespace rulelist {

enum class MapDecision {
    InsertNew,      // key was absent; entry stored
    ReplacedWorse,  // strictly better bound; caller deletes the prior permutation's subtree
    Blocked,        // an equal-or-better permutation exists; caller discards the prefix
};

struct MapOutcome {
    MapDecision decision = MapDecision::Blocked;
    std::vector<int> evicted; // prior permutation, set when decision == ReplacedWorse
};

// Enforces the permutation bound: at most one permutation of any antecedent set
// survives in the search. Keys are antecedent ids in ascending order; the stored
// bound is the integer count prefix_mistakes + uncaptured_minority, which orders
// permutations exactly (permutations share K, so the lambda term cancels, and they
// capture identical data, so b0 is permutation-invariant).
class SymmetryMap {
public:
    static std::vector<int> canonical_key(std::span<const int> prefix);

    MapOutcome check_and_insert(std::span<const int> prefix, std::int64_t augmented_mistakes);

    std::size_t size() const { return entries_.size(); }

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<int>& key) const {
            std::size_t h = 1469598103934665603ull;
            for (int id : key) {
                h ^= static_cast<std::size_t>(id) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            }
            return h;
        }
    };
    struct Entry {
        std::vector<int> best_permutation;
        std::int64_t best_bound;
    };
    std::unordered_map<std::vector<int>, Entry, KeyHash> entries_;
};

} // namespace rulelist
