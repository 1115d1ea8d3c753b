#include "rulelist/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

namespace rulelist {

namespace {

std::vector<std::string> parse_csv_record(std::istream& in, int line_number,
                                          const std::string& origin, bool& eof) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false, any = false;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(static_cast<char>(c));
            }
        } else if (c == '"') {
            if (!field.empty())
                throw ParseError(origin + ":" + std::to_string(line_number) +
                                 ": quote inside unquoted field");
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\r') {
            // swallow; CRLF handled at '\n'
        } else if (c == '\n') {
            fields.push_back(std::move(field));
            eof = false;
            return fields;
        } else {
            field.push_back(static_cast<char>(c));
        }
    }
    if (in_quotes)
        throw ParseError(origin + ":" + std::to_string(line_number) + ": unterminated quote");
    eof = true;
    if (any) fields.push_back(std::move(field));
    return fields;
}

} // namespace

CategoricalTable parse_categorical_csv(std::istream& in, const std::string& label_column,
                                       const std::string& origin) {
    CategoricalTable table;
    bool eof = false;
    int line_number = 1;
    table.column_names = parse_csv_record(in, line_number, origin, eof);
    if (table.column_names.empty())
        throw ParseError(origin + ":1: missing header row");
    for (int j = 0; j < table.n_columns(); ++j)
        if (table.column_names[j] == label_column) table.label_index = j;
    if (table.label_index < 0)
        throw SchemaError(origin + ": no column named '" + label_column + "'");

    while (!eof) {
        ++line_number;
        auto row = parse_csv_record(in, line_number, origin, eof);
        if (row.empty()) continue;
        if (row.size() != table.column_names.size())
            throw ParseError(origin + ":" + std::to_string(line_number) + ": expected " +
                             std::to_string(table.column_names.size()) + " fields, got " +
                             std::to_string(row.size()));
        if (std::any_of(row.begin(), row.end(), [](const std::string& s) { return s.empty(); })) {
            ++table.dropped_rows;
            continue;
        }
        const std::string& label = row[table.label_index];
        if (label != "0" && label != "1")
            throw SchemaError(origin + ":" + std::to_string(line_number) +
                              ": label column must be 0/1, got '" + label + "'");
        table.rows.push_back(std::move(row));
    }
    return table;
}

CategoricalTable load_categorical_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path);
    return parse_categorical_csv(in, label_column, path);
}

void write_categorical_csv(const std::string& path, const CategoricalTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path);
    auto emit = [&out](const std::vector<std::string>& fields) {
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (j) out << ',';
            const std::string& f = fields[j];
            if (f.find_first_of(",\"\n") != std::string::npos) {
                out << '"';
                for (char c : f) {
                    if (c == '"') out << '"';
                    out << c;
                }
                out << '"';
            } else {
                out << f;
            }
        }
        out << '\n';
    };
    emit(table.column_names);
    for (const auto& row : table.rows) emit(row);
}

BitVector label_vector(const CategoricalTable& table) {
    BitVector labels(table.n_rows());
    for (int i = 0; i < table.n_rows(); ++i)
        if (table.label_of(i)) labels.set(i);
    return labels;
}

namespace {

std::string sanitize(std::string text) {
    for (char& c : text)
        if (c == ' ' || c == '(' || c == ')') c = '_';
    return text;
}

struct Clause {
    int column;
    std::string value;
    bool negated;
    BitVector captures;

    std::string render(const CategoricalTable& table) const {
        return sanitize(table.column_names[column]) + (negated ? "!=" : "=") + sanitize(value);
    }
};

} // namespace

AntecedentSet mine_antecedents(const CategoricalTable& table, int max_clauses,
                               const std::vector<std::string>& negate_attributes,
                               double lambda_min) {
    if (max_clauses != 1 && max_clauses != 2)
        throw ArgumentError("max_clauses must be 1 or 2");
    if (lambda_min < 0.0 || lambda_min >= 0.5)
        throw ArgumentError("lambda_min must be in [0, 0.5)");
    const int n = table.n_rows();
    if (n == 0) throw EmptyModelError("empty table");

    std::set<std::string> negate(negate_attributes.begin(), negate_attributes.end());
    for (const auto& attr : negate)
        if (std::find(table.column_names.begin(), table.column_names.end(), attr) ==
            table.column_names.end())
            throw ArgumentError("unknown attribute for negation: '" + attr + "'");

    // Single clauses, in (column, sorted value) order for deterministic ids.
    std::vector<Clause> positives;
    for (int j = 0; j < table.n_columns(); ++j) {
        if (j == table.label_index) continue;
        std::map<std::string, BitVector> by_value;
        for (int i = 0; i < n; ++i) {
            auto [it, inserted] = by_value.try_emplace(table.rows[i][j], BitVector(n));
            it->second.set(i);
        }
        for (auto& [value, captures] : by_value)
            positives.push_back(Clause{j, value, false, std::move(captures)});
    }

    std::vector<Clause> negations;
    for (const auto& clause : positives) {
        if (!negate.count(table.column_names[clause.column])) continue;
        BitVector complement(n, true);
        complement.assign_andnot(complement, clause.captures);
        negations.push_back(Clause{clause.column, clause.value, true, std::move(complement)});
    }

    const double lo = lambda_min * n, hi = (1.0 - lambda_min) * n;
    auto keep = [&](const BitVector& captures) {
        const int c = captures.count();
        return c >= lo && c <= hi;
    };

    AntecedentSet mined;
    auto add = [&](std::string name, BitVector captures, int clause_count, bool negated) {
        if (!keep(captures)) return;
        Antecedent a;
        a.id = static_cast<int>(mined.size());
        a.name = std::move(name);
        a.captures = std::move(captures);
        a.clause_count = clause_count;
        a.negated = negated;
        mined.push_back(std::move(a));
    };

    for (const auto& c : positives) add(c.render(table), c.captures, 1, false);
    for (const auto& c : negations) add(c.render(table), c.captures, 1, true);
    if (max_clauses == 2) {
        for (std::size_t a = 0; a < positives.size(); ++a) {
            for (std::size_t b = a + 1; b < positives.size(); ++b) {
                if (positives[a].column == positives[b].column) continue;
                add(positives[a].render(table) + "," + positives[b].render(table),
                    bit_and(positives[a].captures, positives[b].captures), 2, false);
            }
        }
    }

    if (mined.empty())
        throw EmptyModelError("no antecedent survives the support filter");
    return mined;
}

BitVector compute_minority_mask(const AntecedentSet& antecedents, const BitVector& labels) {
    const int n = labels.size();
    // Signature of a sample: its column through the capture matrix.
    const int sig_words = (static_cast<int>(antecedents.size()) + 63) / 64;
    std::vector<std::uint64_t> signatures(static_cast<std::size_t>(n) * sig_words, 0);
    for (std::size_t m = 0; m < antecedents.size(); ++m) {
        const BitVector& cap = antecedents[m].captures;
        const std::uint64_t bit = std::uint64_t{1} << (m & 63);
        const std::size_t word = m >> 6;
        for (int i = 0; i < n; ++i)
            if (cap.test(i)) signatures[static_cast<std::size_t>(i) * sig_words + word] |= bit;
    }

    struct SigView {
        const std::uint64_t* p;
        int len;
        bool operator==(const SigView& o) const { return std::equal(p, p + len, o.p); }
    };
    struct SigHash {
        std::size_t operator()(const SigView& s) const {
            std::size_t h = 1469598103934665603ull;
            for (int i = 0; i < s.len; ++i) h = (h ^ s.p[i]) * 1099511628211ull;
            return h;
        }
    };
    std::unordered_map<SigView, std::vector<int>, SigHash> groups;
    groups.reserve(static_cast<std::size_t>(n) * 2);
    for (int i = 0; i < n; ++i)
        groups[SigView{&signatures[static_cast<std::size_t>(i) * sig_words], sig_words}]
            .push_back(i);

    BitVector mask(n);
    for (const auto& [sig, members] : groups) {
        int positives = 0;
        for (int i : members)
            if (labels.test(i)) ++positives;
        const int negatives = static_cast<int>(members.size()) - positives;
        if (positives == 0 || negatives == 0) continue;
        const bool minority_label = positives <= negatives; // ties mark the label-1 samples
        for (int i : members)
            if (labels.test(i) == minority_label) mask.set(i);
    }
    return mask;
}

LabeledDataset build_dataset(const CategoricalTable& table, int max_clauses,
                             const std::vector<std::string>& negate_attributes,
                             double lambda_min) {
    LabeledDataset dataset;
    dataset.n_samples = table.n_rows();
    dataset.labels = label_vector(table);
    dataset.antecedents = mine_antecedents(table, max_clauses, negate_attributes, lambda_min);
    dataset.minority_mask = compute_minority_mask(dataset.antecedents, dataset.labels);
    dataset.mined_lambda_min = lambda_min;
    return dataset;
}

std::vector<FoldSplit> split_folds(const CategoricalTable& table, int k, std::uint64_t seed,
                                   bool resample_minority) {
    const int n = table.n_rows();
    if (k < 2) throw ArgumentError("fold count must be at least 2");
    if (k > n) throw ArgumentError("fold count exceeds number of rows");

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<FoldSplit> folds(k);
    for (int fold = 0; fold < k; ++fold) {
        CategoricalTable train, test;
        train.column_names = test.column_names = table.column_names;
        train.label_index = test.label_index = table.label_index;
        for (int i = 0; i < n; ++i) {
            (i % k == fold ? test : train).rows.push_back(table.rows[order[i]]);
        }
        if (resample_minority) {
            std::vector<int> pos, neg;
            for (int i = 0; i < train.n_rows(); ++i)
                (train.label_of(i) ? pos : neg).push_back(i);
            auto& smaller = pos.size() <= neg.size() ? pos : neg;
            const std::size_t target = std::max(pos.size(), neg.size());
            if (!smaller.empty()) {
                std::mt19937_64 fold_rng(seed ^ (0x9e3779b97f4a7c15ull * (fold + 1)));
                std::uniform_int_distribution<std::size_t> pick(0, smaller.size() - 1);
                for (std::size_t c = smaller.size(); c < target; ++c)
                    train.rows.push_back(train.rows[smaller[pick(fold_rng)]]);
            }
        }
        folds[fold].train = std::move(train);
        folds[fold].test = std::move(test);
    }
    return folds;
}

// --- File formats --------------------------------------------------------------------

namespace {

void write_bit_line(std::ostream& out, const std::string& name, const BitVector& bits) {
    out << name;
    for (int i = 0; i < bits.size(); ++i) out << ' ' << (bits.test(i) ? '1' : '0');
    out << '\n';
}

struct BitLine {
    std::string name;
    BitVector bits;
};

std::optional<BitLine> read_bit_line(std::istream& in, const std::string& origin,
                                     int line_number) {
    std::string line;
    if (!std::getline(in, line)) return std::nullopt;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) return std::nullopt;
    std::istringstream tokens(line);
    std::string name;
    tokens >> name;
    std::vector<bool> bits;
    std::string tok;
    while (tokens >> tok) {
        if (tok == "0")
            bits.push_back(false);
        else if (tok == "1")
            bits.push_back(true);
        else
            throw ParseError(origin + ":" + std::to_string(line_number) + ": bad bit '" + tok +
                             "'");
    }
    if (name.empty() || bits.empty())
        throw ParseError(origin + ":" + std::to_string(line_number) + ": expected `name bits...`");
    BitLine out;
    out.name = std::move(name);
    out.bits = BitVector(static_cast<int>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out.bits.set(static_cast<int>(i));
    return out;
}

} // namespace

void write_rule_file(const std::string& path, const AntecedentSet& antecedents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path);
    for (const auto& a : antecedents) write_bit_line(out, a.name, a.captures);
}

void write_label_file(const std::string& path, const BitVector& labels) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path);
    BitVector label0(labels.size(), true);
    label0.assign_andnot(label0, labels);
    write_bit_line(out, "label=0", label0);
    write_bit_line(out, "label=1", labels);
}

void write_minority_file(const std::string& path, const BitVector& minority_mask) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path);
    write_bit_line(out, "minority", minority_mask);
}

AntecedentSet read_rule_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path);
    AntecedentSet antecedents;
    int line_number = 0;
    while (true) {
        ++line_number;
        auto line = read_bit_line(in, path, line_number);
        if (!line) break;
        if (!antecedents.empty() && line->bits.size() != antecedents.front().captures.size())
            throw SchemaError(path + ":" + std::to_string(line_number) + ": rule '" + line->name +
                              "' has " + std::to_string(line->bits.size()) + " bits, expected " +
                              std::to_string(antecedents.front().captures.size()));
        Antecedent a;
        a.id = static_cast<int>(antecedents.size());
        a.name = std::move(line->name);
        a.clause_count = 1 + static_cast<int>(std::count(a.name.begin(), a.name.end(), ','));
        a.negated = a.name.find("!=") != std::string::npos;
        a.captures = std::move(line->bits);
        antecedents.push_back(std::move(a));
    }
    if (antecedents.empty()) throw ParseError(path + ": no rules");
    return antecedents;
}

BitVector read_label_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path);
    auto line0 = read_bit_line(in, path, 1);
    auto line1 = read_bit_line(in, path, 2);
    if (!line0 || !line1) throw ParseError(path + ": expected two label lines");
    if (line0->bits.size() != line1->bits.size())
        throw SchemaError(path + ":2: label lines disagree on length");
    if (and_count(line0->bits, line1->bits) != 0 ||
        line0->bits.count() + line1->bits.count() != line0->bits.size())
        throw SchemaError(path + ": label lines are not complementary");
    return line1->bits;
}

BitVector read_minority_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path);
    auto line = read_bit_line(in, path, 1);
    if (!line) throw ParseError(path + ": expected one minority line");
    return line->bits;
}

LabeledDataset load_dataset_files(const std::string& rule_path, const std::string& label_path,
                                  const std::optional<std::string>& minority_path) {
    LabeledDataset dataset;
    dataset.antecedents = read_rule_file(rule_path);
    dataset.labels = read_label_file(label_path);
    dataset.n_samples = dataset.labels.size();
    if (dataset.antecedents.front().captures.size() != dataset.n_samples)
        throw SchemaError(rule_path + ":1: rule bits length " +
                          std::to_string(dataset.antecedents.front().captures.size()) +
                          " does not match label length " + std::to_string(dataset.n_samples));
    if (minority_path) {
        dataset.minority_mask = read_minority_file(*minority_path);
        if (dataset.minority_mask.size() != dataset.n_samples)
            throw SchemaError(*minority_path + ":1: minority bits length " +
                              std::to_string(dataset.minority_mask.size()) +
                              " does not match label length " + std::to_string(dataset.n_samples));
    } else {
        dataset.minority_mask = compute_minority_mask(dataset.antecedents, dataset.labels);
    }
    return dataset;
}

} // namespace rulelist
