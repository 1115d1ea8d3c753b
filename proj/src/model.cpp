#include "rulelist/model.hpp"

#include <fstream>
#include <sstream>

namespace rulelist {

std::string model_to_text(const RuleListModel& model, const AntecedentSet& antecedents) {
    std::ostringstream out;
    std::ostringstream machine;
    for (int k = 0; k < model.length(); ++k) {
        const Antecedent& rule = antecedents.at(model.prefix[k]);
        out << (k == 0 ? "if" : "else if") << " (" << rule.name << ") then predict "
            << (model.predictions[k] ? 1 : 0) << '\n';
        machine << rule.name << ':' << (model.predictions[k] ? 1 : 0) << ',';
    }
    out << "else predict " << (model.default_prediction ? 1 : 0) << '\n';
    machine << "default:" << (model.default_prediction ? 1 : 0);
    out << machine.str() << '\n';
    return out.str();
}

void write_model_file(const std::string& path, const RuleListModel& model,
                      const AntecedentSet& antecedents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path);
    out << model_to_text(model, antecedents);
}

NamedRuleList read_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path);
    NamedRuleList model;
    std::string line;
    int line_number = 0;
    bool saw_default = false, saw_machine = false;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(line_number);
        if (line.rfind("if (", 0) == 0 || line.rfind("else if (", 0) == 0) {
            const std::size_t open = line.find('(');
            const std::size_t close = line.rfind(") then predict ");
            if (close == std::string::npos || close <= open)
                throw ParseError(where + ": malformed rule line");
            model.rule_names.push_back(line.substr(open + 1, close - open - 1));
            const char pred = line.back();
            if (pred != '0' && pred != '1') throw ParseError(where + ": bad prediction");
            model.predictions.push_back(pred == '1');
        } else if (line.rfind("else predict ", 0) == 0) {
            const char pred = line.back();
            if (pred != '0' && pred != '1') throw ParseError(where + ": bad prediction");
            model.default_prediction = pred == '1';
            saw_default = true;
        } else {
            // Machine-readable line; used as an integrity check against the text form.
            int rules = 0;
            std::stringstream fields(line);
            std::string field;
            while (std::getline(fields, field, ','))
                if (field.rfind("default:", 0) != 0) ++rules;
            if (rules != model.length())
                throw ParseError(where + ": machine line lists " + std::to_string(rules) +
                                 " rules, text form has " + std::to_string(model.length()));
            saw_machine = true;
        }
    }
    if (!saw_default || !saw_machine)
        throw ParseError(path + ": truncated model file");
    return model;
}

namespace {

const Antecedent& find_rule(const AntecedentSet& antecedents, const std::string& name) {
    for (const auto& a : antecedents)
        if (a.name == name) return a;
    throw SchemaError("antecedent '" + name + "' not present in the rule file");
}

} // namespace

BitVector apply_model(const NamedRuleList& model, const AntecedentSet& antecedents) {
    const int n = antecedents.front().captures.size();
    BitVector predicted(n);
    BitVector uncaptured(n, true);
    BitVector captured(n);
    for (int k = 0; k < model.length(); ++k) {
        const Antecedent& rule = find_rule(antecedents, model.rule_names[k]);
        captured.assign_and(uncaptured, rule.captures);
        if (model.predictions[k]) predicted.assign_or(predicted, captured);
        uncaptured.assign_andnot(uncaptured, captured);
    }
    if (model.default_prediction) predicted.assign_or(predicted, uncaptured);
    return predicted;
}

EvalMetrics evaluate_model(const NamedRuleList& model, const AntecedentSet& antecedents,
                           const BitVector& labels) {
    const BitVector predicted = apply_model(model, antecedents);
    if (predicted.size() != labels.size())
        throw SchemaError("rule file and label file disagree on sample count");
    EvalMetrics m;
    m.tp = and_count(predicted, labels);
    m.fp = andnot_count(predicted, labels);
    m.fn = andnot_count(labels, predicted);
    m.tn = labels.size() - m.tp - m.fp - m.fn;
    const int n = labels.size();
    m.accuracy = n ? static_cast<double>(m.tp + m.tn) / n : 0.0;
    m.tpr = (m.tp + m.fn) ? static_cast<double>(m.tp) / (m.tp + m.fn) : 0.0;
    m.fnr = (m.tp + m.fn) ? static_cast<double>(m.fn) / (m.tp + m.fn) : 0.0;
    m.fpr = (m.fp + m.tn) ? static_cast<double>(m.fp) / (m.fp + m.tn) : 0.0;
    m.tnr = (m.fp + m.tn) ? static_cast<double>(m.tn) / (m.fp + m.tn) : 0.0;
    return m;
}

std::string metrics_csv_header() {
    return "accuracy,tpr,fpr,tnr,fnr,tp,fp,tn,fn";
}

std::string metrics_csv_row(const EvalMetrics& m) {
    std::ostringstream out;
    out << m.accuracy << ',' << m.tpr << ',' << m.fpr << ',' << m.tnr << ',' << m.fnr << ','
        << m.tp << ',' << m.fp << ',' << m.tn << ',' << m.fn;
    return out.str();
}

} // namespace rulelist
