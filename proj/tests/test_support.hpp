#pragma once

#include <random>
#include <string>
#include <vector>

#include "rulelist/dataset.hpp"

namespace rulelist::testing {

// Seeded random instance: Bernoulli capture matrix and labels, minority mask
// computed by the production grouping (itself tested against a naive grouping).
inline LabeledDataset random_instance(std::uint64_t seed, int n, int m,
                                      double capture_density = 0.5,
                                      double label_density = 0.5) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution capture(capture_density);
    std::bernoulli_distribution label(label_density);

    LabeledDataset dataset;
    dataset.n_samples = n;
    dataset.labels = BitVector(n);
    for (int i = 0; i < n; ++i)
        if (label(rng)) dataset.labels.set(i);
    for (int j = 0; j < m; ++j) {
        Antecedent a;
        a.id = j;
        a.name = "r" + std::to_string(j);
        a.captures = BitVector(n);
        for (int i = 0; i < n; ++i)
            if (capture(rng)) a.captures.set(i);
        dataset.antecedents.push_back(std::move(a));
    }
    dataset.minority_mask = compute_minority_mask(dataset.antecedents, dataset.labels);
    return dataset;
}

inline CategoricalTable table_from_rows(const std::vector<std::string>& columns, int label_index,
                                        const std::vector<std::vector<std::string>>& rows) {
    CategoricalTable table;
    table.column_names = columns;
    table.label_index = label_index;
    table.rows = rows;
    return table;
}

} // namespace rulelist::testing
