#include "rulelist/symmap.hpp"

#include <algorithm>

namespace rulelist {

std::vector<int> SymmetryMap::canonical_key(std::span<const int> prefix) {
    std::vector<int> key(prefix.begin(), prefix.end());
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end()) != key.end())
        throw ArgumentError("prefix contains a duplicate antecedent id");
    return key;
}

MapOutcome SymmetryMap::check_and_insert(std::span<const int> prefix,
                                         std::int64_t augmented_mistakes) {
    std::vector<int> key = canonical_key(prefix);
    auto [it, inserted] = entries_.try_emplace(
        std::move(key), Entry{{prefix.begin(), prefix.end()}, augmented_mistakes});
    if (inserted) return {MapDecision::InsertNew, {}};
    if (augmented_mistakes < it->second.best_bound) {
        MapOutcome outcome{MapDecision::ReplacedWorse, std::move(it->second.best_permutation)};
        it->second.best_permutation.assign(prefix.begin(), prefix.end());
        it->second.best_bound = augmented_mistakes;
        return outcome;
    }
    return {MapDecision::Blocked, {}}; // ties block the newcomer
}

} // namespace rulelist
