#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rulelist/bitvector.hpp"
#include "rulelist/errors.hpp"

namespace rulelist {

// A named Boolean predicate over features with its precomputed capture vector.
struct Antecedent {
    int id = -1;             // dense index within an AntecedentSet
    std::string name;        // e.g. "age=18-20,sex=male" or "city!=Queens"
    BitVector captures;      // bit set <=> the predicate holds for that sample
    int clause_count = 1;    // 1 or 2
    bool negated = false;

    double support() const { return static_cast<double>(captures.count()) / captures.size(); }
};

using AntecedentSet = std::vector<Antecedent>;

struct LabeledDataset {
    int n_samples = 0;
    BitVector labels;        // bit set <=> y_n = 1
    AntecedentSet antecedents;
    BitVector minority_mask; // bit set <=> sample carries its equivalence class's minority label
    double mined_lambda_min = 0.0;
};

// Rows of non-missing categorical cells plus the designated binary label column.
struct CategoricalTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<std::string>> rows;
    int label_index = -1;
    int dropped_rows = 0; // rows removed at ingestion because of missing cells

    int n_rows() const { return static_cast<int>(rows.size()); }
    int n_columns() const { return static_cast<int>(column_names.size()); }
    const std::string& label_column() const { return column_names[label_index]; }
    bool label_of(int row) const { return rows[row][label_index] == "1"; }
};

struct FoldSplit {
    CategoricalTable train;
    CategoricalTable test;
};

// RFC-4180-style parsing (quoted fields, "" escapes, CRLF). Rows with any empty cell
// are dropped and counted; the label column must hold only "0"/"1".
CategoricalTable load_categorical_csv(const std::string& path, const std::string& label_column);
CategoricalTable parse_categorical_csv(std::istream& in, const std::string& label_column,
                                       const std::string& origin);
void write_categorical_csv(const std::string& path, const CategoricalTable& table);

// Emits every single-clause predicate (attribute = value), negations (attribute !=
// value) for the listed attributes, and, when max_clauses == 2, all conjunctions of
// two clauses over distinct attributes. Antecedents with normalized support below
// lambda_min or above 1 - lambda_min are dropped.
AntecedentSet mine_antecedents(const CategoricalTable& table, int max_clauses,
                               const std::vector<std::string>& negate_attributes,
                               double lambda_min);

BitVector label_vector(const CategoricalTable& table);

// Groups samples by identical capture signature across all antecedents and sets the
// bits of each group's minority-label samples (ties mark the label-1 samples).
BitVector compute_minority_mask(const AntecedentSet& antecedents, const BitVector& labels);

LabeledDataset build_dataset(const CategoricalTable& table, int max_clauses,
                             const std::vector<std::string>& negate_attributes,
                             double lambda_min);

// Deterministic k-fold split; when resample_minority is set, each training fold
// upsamples its minority class with replacement until the classes balance. Test
// folds are never resampled.
std::vector<FoldSplit> split_folds(const CategoricalTable& table, int k, std::uint64_t seed,
                                   bool resample_minority);

// --- Rule / label / minority files --------------------------------------------------
// One antecedent per line: `{name} b_1 b_2 ... b_N`, space-separated bits. The label
// file holds two such lines (label 0, then label 1); the minority file one line.

void write_rule_file(const std::string& path, const AntecedentSet& antecedents);
void write_label_file(const std::string& path, const BitVector& labels);
void write_minority_file(const std::string& path, const BitVector& minority_mask);

AntecedentSet read_rule_file(const std::string& path);
BitVector read_label_file(const std::string& path);
BitVector read_minority_file(const std::string& path);

// Assembles a dataset from the on-disk formats, validating that all bit-string
// lengths agree; without a minority path the mask is computed in-process.
LabeledDataset load_dataset_files(const std::string& rule_path, const std::string& label_path,
                                  const std::optional<std::string>& minority_path);

} // namespace rulelist
