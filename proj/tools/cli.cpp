#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rulelist/dataset.hpp"
#include "rulelist/model.hpp"
#include "rulelist/oracle.hpp"
#include "rulelist/prep.hpp"
#include "rulelist/solver.hpp"

namespace fs = std::filesystem;
using namespace rulelist;

namespace {

constexpr const char* kVersion = "0.1.0";

void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path);
    out << "version=" << kVersion << '\n';
    for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
}

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream fields(text);
    std::string field;
    while (std::getline(fields, field, ','))
        if (!field.empty()) out.push_back(field);
    return out;
}

struct MineOptions {
    std::string csv, label_column, outdir;
    std::string negations; // comma-separated attribute names
    int max_clauses = 2;
    double lambda_min = 0.0;
    int folds = 10;
    std::uint64_t seed = 0;
    bool resample = false;
};

int cmd_mine(const MineOptions& opt) {
    CategoricalTable table = load_categorical_csv(opt.csv, opt.label_column);
    if (table.dropped_rows > 0)
        std::cerr << "dropped " << table.dropped_rows << " rows with missing cells; "
                  << table.n_rows() << " retained\n";
    const auto negate_attributes = split_csv_list(opt.negations);
    fs::create_directories(opt.outdir);

    auto emit = [&](const fs::path& dir, const CategoricalTable& train,
                    const CategoricalTable* test) {
        fs::create_directories(dir);
        LabeledDataset dataset =
            build_dataset(train, opt.max_clauses, negate_attributes, opt.lambda_min);
        write_rule_file((dir / "train.rules").string(), dataset.antecedents);
        write_label_file((dir / "train.labels").string(), dataset.labels);
        write_minority_file((dir / "train.minority").string(), dataset.minority_mask);
        if (test) {
            // Same antecedent set, captures recomputed over the test rows.
            AntecedentSet on_test = mine_antecedents(*test, opt.max_clauses, negate_attributes, 0.0);
            AntecedentSet aligned;
            for (const auto& a : dataset.antecedents) {
                auto found = std::find_if(on_test.begin(), on_test.end(),
                                          [&](const Antecedent& t) { return t.name == a.name; });
                Antecedent out = a;
                out.id = static_cast<int>(aligned.size());
                out.captures =
                    found != on_test.end() ? found->captures : BitVector(test->n_rows());
                aligned.push_back(std::move(out));
            }
            write_rule_file((dir / "test.rules").string(), aligned);
            write_label_file((dir / "test.labels").string(), label_vector(*test));
        }
        std::cout << dir.string() << ": " << dataset.antecedents.size() << " antecedents over "
                  << train.n_rows() << " rows\n";
    };

    if (opt.folds <= 1) {
        emit(fs::path(opt.outdir), table, nullptr);
    } else {
        auto folds = split_folds(table, opt.folds, opt.seed, opt.resample);
        for (std::size_t i = 0; i < folds.size(); ++i)
            emit(fs::path(opt.outdir) / ("fold" + std::to_string(i)), folds[i].train,
                 &folds[i].test);
    }

    write_manifest((fs::path(opt.outdir) / "mine.manifest").string(),
                   {{"subcommand", "mine"},
                    {"csv", opt.csv},
                    {"label_column", opt.label_column},
                    {"max_clauses", std::to_string(opt.max_clauses)},
                    {"negations", opt.negations},
                    {"lambda_min", std::to_string(opt.lambda_min)},
                    {"folds", std::to_string(opt.folds)},
                    {"seed", std::to_string(opt.seed)},
                    {"resample", opt.resample ? "1" : "0"},
                    {"dropped_rows", std::to_string(table.dropped_rows)},
                    {"outdir", opt.outdir}});
    return 0;
}

struct TrainOptions {
    std::string rules, labels, model_path, trace_path;
    std::optional<std::string> minority;
    std::string lambda = "0.01";
    std::string policy = "lower_bound";
    std::optional<std::size_t> max_nodes;
    std::optional<double> max_seconds;
    Ablations ablations;
    int verbosity = 0;
    int trace_interval = 4096;
};

int cmd_train(const TrainOptions& opt) {
    LabeledDataset dataset = load_dataset_files(opt.rules, opt.labels, opt.minority);
    SolverConfig config;
    config.lambda = Rational::from_decimal(opt.lambda);
    config.policy = parse_policy(opt.policy);
    config.max_nodes = opt.max_nodes;
    config.max_seconds = opt.max_seconds;
    config.ablations = opt.ablations;
    config.verbosity = opt.verbosity;
    config.trace_sample_interval = opt.trace_interval;

    std::ofstream trace;
    std::function<void(const TraceRecord&)> trace_sink;
    if (!opt.trace_path.empty()) {
        trace.open(opt.trace_path, std::ios::binary);
        if (!trace) throw ArgumentError("cannot write " + opt.trace_path);
        trace << "elapsed_s,incumbent_objective,popped_lower_bound,incumbent_length,"
                 "logical_queue,physical_queue,trie_nodes,log10_remaining\n";
        trace_sink = [&trace](const TraceRecord& r) {
            trace << r.elapsed_s << ',' << r.incumbent_objective << ',' << r.popped_lower_bound
                  << ',' << r.incumbent_length << ',' << r.logical_queue << ','
                  << r.physical_queue << ',' << r.trie_nodes << ',' << r.log10_remaining << '\n';
        };
    }

    SolverResult result = solve(dataset, config, trace_sink);
    write_model_file(opt.model_path, result.best, dataset.antecedents);

    const auto& c = result.counters;
    write_manifest(opt.model_path + ".manifest",
                   {{"subcommand", "train"},
                    {"rules", opt.rules},
                    {"labels", opt.labels},
                    {"minority", opt.minority.value_or("")},
                    {"lambda", opt.lambda},
                    {"policy", opt.policy},
                    {"status", to_string(result.status)},
                    {"objective", std::to_string(result.best_objective)},
                    {"optimality_gap", std::to_string(result.optimality_gap)},
                    {"prefix_length", std::to_string(result.best.length())},
                    {"lower_bound_evaluations", std::to_string(c.lower_bound_evaluations)},
                    {"queue_insertions", std::to_string(c.queue_insertions)},
                    {"max_physical_queue", std::to_string(c.max_physical_queue)},
                    {"max_logical_queue", std::to_string(c.max_logical_queue)},
                    {"trie_node_peak", std::to_string(c.trie_node_peak)},
                    {"incumbent_updates", std::to_string(c.incumbent_updates)},
                    {"max_evaluated_prefix_length",
                     std::to_string(c.max_evaluated_prefix_length)},
                    {"model", opt.model_path},
                    {"trace", opt.trace_path}});

    std::cout << to_string(result.status) << " objective=" << std::setprecision(10)
              << result.best_objective << " length=" << result.best.length()
              << " gap=" << result.optimality_gap << '\n';
    switch (result.status) {
    case SolveStatus::CertifiedOptimal: return 0;
    case SolveStatus::IncompleteTime: return 2;
    case SolveStatus::IncompleteMemory: return 3;
    }
    return 1;
}

int cmd_eval(const std::string& model_path, const std::string& rules_path,
             const std::string& labels_path) {
    NamedRuleList model = read_model_file(model_path);
    AntecedentSet antecedents = read_rule_file(rules_path);
    BitVector labels = read_label_file(labels_path);
    if (antecedents.front().captures.size() != labels.size())
        throw SchemaError(rules_path + " and " + labels_path + " disagree on sample count");
    EvalMetrics metrics = evaluate_model(model, antecedents, labels);
    std::cout << metrics_csv_header() << '\n' << metrics_csv_row(metrics) << '\n';
    return 0;
}

int cmd_oracle(const std::string& rules_path, const std::string& labels_path,
               const std::string& lambda, std::optional<int> k_cap) {
    LabeledDataset dataset = load_dataset_files(rules_path, labels_path, std::nullopt);
    OracleResult result = brute_force(dataset, Rational::from_decimal(lambda), k_cap);
    std::cout << "min_objective=" << std::setprecision(10) << result.min_objective
              << " mistakes=" << result.min_mistakes << " length=" << result.min_length
              << " witnesses=" << result.witnesses.size()
              << " evaluated=" << result.evaluated_prefixes << '\n';
    for (const auto& witness : result.witnesses) {
        std::cout << "  [";
        for (std::size_t k = 0; k < witness.prefix.size(); ++k) {
            if (k) std::cout << ' ';
            std::cout << dataset.antecedents[witness.prefix[k]].name << ':'
                      << (witness.predictions[k] ? 1 : 0);
        }
        std::cout << "] default:" << (witness.default_prediction ? 1 : 0) << '\n';
    }
    return 0;
}

int cmd_prep(const std::string& kind, const std::string& input, const std::string& output) {
    CategoricalTable table;
    if (kind == "compas")
        table = prep_compas(input);
    else if (kind == "nyclu")
        table = prep_nyclu(input);
    else
        throw ArgumentError("unknown prep dataset '" + kind + "'");
    write_categorical_csv(output, table);
    std::cout << output << ": " << table.n_rows() << " rows retained, " << table.dropped_rows
              << " dropped\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certifiably optimal rule lists over pre-mined categorical antecedents"};
    app.require_subcommand(1);

    MineOptions mine;
    auto* mine_cmd = app.add_subcommand("mine", "Mine antecedents and write per-fold files");
    mine_cmd->add_option("--csv", mine.csv, "categorical CSV with header")->required();
    mine_cmd->add_option("--label-column", mine.label_column, "binary label column")->required();
    mine_cmd->add_option("--max-clauses", mine.max_clauses, "1 or 2")->check(CLI::Range(1, 2));
    mine_cmd->add_option("--negations", mine.negations,
                         "comma-separated attributes whose values also get negated antecedents");
    mine_cmd->add_option("--lambda-min", mine.lambda_min, "mining-time support filter");
    mine_cmd->add_option("--folds", mine.folds, "fold count; 1 = no split");
    mine_cmd->add_option("--seed", mine.seed, "fold shuffle seed");
    mine_cmd->add_flag("--resample", mine.resample, "upsample the training minority class");
    mine_cmd->add_option("--outdir", mine.outdir, "output directory")->required();

    TrainOptions train;
    std::string minority_path;
    auto* train_cmd = app.add_subcommand("train", "Learn a certifiably optimal rule list");
    train_cmd->add_option("--rules", train.rules, "rule file")->required();
    train_cmd->add_option("--labels", train.labels, "label file")->required();
    train_cmd->add_option("--minority", minority_path,
                          "minority file (computed in-process when omitted)");
    train_cmd->add_option("--lambda", train.lambda, "per-rule regularization (decimal)");
    train_cmd->add_option("--policy", train.policy,
                          "bfs|dfs|lower_bound|objective|curiosity");
    std::size_t max_nodes = 0;
    double max_seconds = 0.0;
    auto* nodes_opt = train_cmd->add_option("--max-nodes", max_nodes, "trie node cap");
    auto* seconds_opt = train_cmd->add_option("--max-seconds", max_seconds, "wall clock cap");
    train_cmd->add_flag("--no-priority", train.ablations.no_priority, "use BFS");
    train_cmd->add_flag("--no-support-bounds", train.ablations.no_support_bounds,
                        "disable antecedent support pruning");
    train_cmd->add_flag("--no-lookahead", train.ablations.no_lookahead,
                        "disable the one-step lookahead tightening");
    train_cmd->add_flag("--no-symmap", train.ablations.no_symmap,
                        "disable the symmetry-aware map");
    train_cmd->add_flag("--no-equiv-points", train.ablations.no_equiv_points,
                        "disable the equivalent points bound");
    train_cmd->add_option("--trace", train.trace_path, "trace CSV path");
    train_cmd->add_option("--model", train.model_path, "model output path")->required();
    train_cmd->add_option("--trace-interval", train.trace_interval, "pops between samples");
    train_cmd->add_option("-v,--verbosity", train.verbosity, "verbosity level");

    std::string eval_model, eval_rules, eval_labels;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model against rule/label files");
    eval_cmd->add_option("--model", eval_model, "model file")->required();
    eval_cmd->add_option("--rules", eval_rules, "rule file")->required();
    eval_cmd->add_option("--labels", eval_labels, "label file")->required();

    std::string oracle_rules, oracle_labels, oracle_lambda = "0.01";
    int oracle_kcap = -1;
    auto* oracle_cmd =
        app.add_subcommand("oracle", "Exhaustive reference solver for small instances");
    oracle_cmd->add_option("--rules", oracle_rules, "rule file")->required();
    oracle_cmd->add_option("--labels", oracle_labels, "label file")->required();
    oracle_cmd->add_option("--lambda", oracle_lambda, "regularization (decimal)");
    oracle_cmd->add_option("--k-cap", oracle_kcap, "max prefix length to enumerate");

    std::string prep_kind, prep_in, prep_out;
    auto* prep_cmd = app.add_subcommand("prep", "Convert a raw study CSV to categorical form");
    prep_cmd->add_option("--dataset", prep_kind, "compas|nyclu")->required();
    prep_cmd->add_option("--in", prep_in, "raw CSV")->required();
    prep_cmd->add_option("--out", prep_out, "categorical CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(mine_cmd)) return cmd_mine(mine);
        if (app.got_subcommand(train_cmd)) {
            if (!minority_path.empty()) train.minority = minority_path;
            if (nodes_opt->count()) train.max_nodes = max_nodes;
            if (seconds_opt->count()) train.max_seconds = max_seconds;
            return cmd_train(train);
        }
        if (app.got_subcommand(eval_cmd)) return cmd_eval(eval_model, eval_rules, eval_labels);
        if (app.got_subcommand(oracle_cmd))
            return cmd_oracle(oracle_rules, oracle_labels, oracle_lambda,
                              oracle_kcap >= 0 ? std::optional<int>(oracle_kcap) : std::nullopt);
        if (app.got_subcommand(prep_cmd)) return cmd_prep(prep_kind, prep_in, prep_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
