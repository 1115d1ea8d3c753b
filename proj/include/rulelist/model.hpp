#pragma once

#include <string>
#include <vector>

#include "rulelist/dataset.hpp"

namespace rulelist {

// A rule list over a concrete antecedent set: ordered distinct ids, their forced
// label predictions, and the default prediction.
struct RuleListModel {
    std::vector<int> prefix;
    std::vector<bool> predictions;
    bool default_prediction = false;

    int length() const { return static_cast<int>(prefix.size()); }
};

// Model as read back from disk: rules identified by name so it can be applied to any
// rule file containing those names.
struct NamedRuleList {
    std::vector<std::string> rule_names;
    std::vector<bool> predictions;
    bool default_prediction = false;

    int length() const { return static_cast<int>(rule_names.size()); }
};

// Textual if/else-if form followed by one machine-readable line
// `rule_id:prediction,...,default:prediction`.
std::string model_to_text(const RuleListModel& model, const AntecedentSet& antecedents);
void write_model_file(const std::string& path, const RuleListModel& model,
                      const AntecedentSet& antecedents);
NamedRuleList read_model_file(const std::string& path);

// Classifies every sample: walks the rule list over the capture vectors.
BitVector apply_model(const NamedRuleList& model, const AntecedentSet& antecedents);

struct EvalMetrics {
    int tp = 0, fp = 0, tn = 0, fn = 0;
    double accuracy = 0.0, tpr = 0.0, fpr = 0.0, tnr = 0.0, fnr = 0.0;
};

EvalMetrics evaluate_model(const NamedRuleList& model, const AntecedentSet& antecedents,
                           const BitVector& labels);

std::string metrics_csv_header();
std::string metrics_csv_row(const EvalMetrics& metrics);

} // namespace rulelist
