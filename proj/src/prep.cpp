#include "rulelist/prep.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

namespace rulelist {

namespace {

// Raw CSV as strings, no missing-data handling (prep applies its own rules).
struct RawTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (std::size_t j = 0; j < header.size(); ++j)
            if (header[j] == name) return static_cast<int>(j);
        throw SchemaError("raw file has no column '" + name + "'");
    }
};

RawTable load_raw_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path);
    RawTable table;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> fields;
        std::string field;
        bool in_quotes = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (in_quotes) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else if (c == '"') {
                    in_quotes = false;
                } else {
                    field.push_back(c);
                }
            } else if (c == '"') {
                in_quotes = true;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else {
                field.push_back(c);
            }
        }
        if (in_quotes)
            throw ParseError(path + ":" + std::to_string(line_number) + ": unterminated quote");
        fields.push_back(std::move(field));
        if (table.header.empty())
            table.header = std::move(fields);
        else if (fields.size() == table.header.size())
            table.rows.push_back(std::move(fields));
        else
            throw ParseError(path + ":" + std::to_string(line_number) + ": expected " +
                             std::to_string(table.header.size()) + " fields, got " +
                             std::to_string(fields.size()));
    }
    if (table.header.empty()) throw ParseError(path + ": empty file");
    return table;
}

bool parse_int(const std::string& text, long& out) {
    if (text.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stol(text, &pos);
    } catch (...) {
        return false;
    }
    return pos == text.size();
}

std::string lower(std::string text) {
    std::transform(text.begin(), text.end(), text.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return text;
}

} // namespace

CategoricalTable prep_compas(const std::string& raw_csv_path) {
    const RawTable raw = load_raw_csv(raw_csv_path);
    const int c_sex = raw.column("sex");
    const int c_age = raw.column("age");
    const int c_juv_fel = raw.column("juv_fel_count");
    const int c_juv_misd = raw.column("juv_misd_count");
    const int c_juv_other = raw.column("juv_other_count");
    const int c_priors = raw.column("priors_count");
    const int c_label = raw.column("two_year_recid");

    CategoricalTable table;
    table.column_names = {"sex",   "age",             "juvenile_felonies",
                          "juvenile_misdemeanors",    "juvenile_crimes",
                          "priors", "two_year_recid"};
    table.label_index = 6;

    for (const auto& row : raw.rows) {
        long age, juv_fel, juv_misd, juv_other, priors;
        const std::string sex = lower(row[c_sex]);
        const std::string& label = row[c_label];
        const bool complete = (sex == "male" || sex == "female") &&
                              parse_int(row[c_age], age) && parse_int(row[c_juv_fel], juv_fel) &&
                              parse_int(row[c_juv_misd], juv_misd) &&
                              parse_int(row[c_juv_other], juv_other) &&
                              parse_int(row[c_priors], priors) && (label == "0" || label == "1");
        if (!complete || age < 18 || age > 96) {
            ++table.dropped_rows;
            continue;
        }
        auto age_bin = [age] {
            if (age <= 20) return std::string("18-20");
            if (age <= 22) return std::string("21-22");
            if (age <= 25) return std::string("23-25");
            if (age <= 45) return std::string("26-45");
            return std::string(">45");
        };
        auto priors_bin = [priors] {
            if (priors == 0) return std::string("0");
            if (priors == 1) return std::string("1");
            if (priors <= 3) return std::string("2-3");
            return std::string(">3");
        };
        table.rows.push_back({sex, age_bin(), juv_fel > 0 ? ">0" : "0",
                              juv_misd > 0 ? ">0" : "0",
                              (juv_fel + juv_misd + juv_other) > 0 ? ">0" : "0", priors_bin(),
                              label});
    }
    return table;
}

CategoricalTable prep_nyclu(const std::string& raw_csv_path) {
    const RawTable raw = load_raw_csv(raw_csv_path);

    // Stop-reason and additional-circumstance flags, in the order the paper lists them.
    const std::array<std::pair<const char*, const char*>, 9> stop_reasons = {{
        {"cs_objcs", "suspicious_object"},
        {"cs_descr", "fits_description"},
        {"cs_casng", "casing"},
        {"cs_lkout", "acting_as_lookout"},
        {"cs_cloth", "suspicious_clothing"},
        {"cs_drgtr", "drug_transaction"},
        {"cs_furtv", "furtive_movements"},
        {"cs_vcrim", "actions_of_violent_crime"},
        {"cs_bulge", "suspicious_bulge"},
    }};
    const std::array<std::pair<const char*, const char*>, 9> circumstances = {{
        {"ac_proxm", "proximity_to_crime_scene"},
        {"ac_evasv", "evasive_response"},
        {"ac_assoc", "associating_with_criminals"},
        {"ac_cgdir", "changed_direction"},
        {"ac_incid", "high_crime_area"},
        {"ac_time", "time_of_day"},
        {"ac_stsnd", "sights_and_sounds_of_criminal_activity"},
        {"ac_rept", "witness_report"},
        {"ac_inves", "ongoing_investigation"},
    }};
    const std::array<const char*, 6> weapon_columns = {"pistol",   "riflshot", "asltweap",
                                                       "knifcuti", "machgun",  "othrweap"};

    const int c_frisked = raw.column("frisked");
    const int c_searched = raw.column("searched");
    const int c_age = raw.column("age");
    const int c_city = raw.column("city");
    const int c_loc = raw.column("trhsloc");
    const int c_inout = raw.column("inout");
    std::array<int, 9> c_reasons, c_circumstances;
    for (std::size_t i = 0; i < 9; ++i) {
        c_reasons[i] = raw.column(stop_reasons[i].first);
        c_circumstances[i] = raw.column(circumstances[i].first);
    }
    std::array<int, 6> c_weapons;
    for (std::size_t i = 0; i < weapon_columns.size(); ++i)
        c_weapons[i] = raw.column(weapon_columns[i]);

    auto flag = [](const std::string& cell) -> int {
        const std::string v = lower(cell);
        if (v == "y" || v == "1") return 1;
        if (v == "n" || v == "0" || v.empty()) return v.empty() ? -1 : 0;
        return -1; // unknown code -> treat as missing
    };

    CategoricalTable table;
    for (const auto& [col, name] : stop_reasons)
        table.column_names.push_back(std::string("stop_reason:") + name);
    for (const auto& [col, name] : circumstances)
        table.column_names.push_back(std::string("circumstance:") + name);
    table.column_names.push_back("city");
    table.column_names.push_back("location");
    table.column_names.push_back("inside_outside");
    table.column_names.push_back("weapon");
    table.label_index = static_cast<int>(table.column_names.size()) - 1;

    for (const auto& row : raw.rows) {
        const int frisked = flag(row[c_frisked]);
        const int searched = flag(row[c_searched]);
        if (frisked != 1 && searched != 1) {
            if (frisked < 0 || searched < 0) ++table.dropped_rows;
            continue; // not frisked or searched: outside the prediction problem
        }
        long age;
        if (!parse_int(row[c_age], age) || age < 12 || age > 89) {
            ++table.dropped_rows;
            continue;
        }

        std::vector<std::string> out;
        bool missing = false;
        auto push_flag = [&](int column) {
            const int v = flag(row[column]);
            if (v < 0) missing = true;
            out.push_back(v == 1 ? "yes" : "no");
        };
        for (int column : c_reasons) push_flag(column);
        for (int column : c_circumstances) push_flag(column);

        const std::string city = lower(row[c_city]);
        std::string location = lower(row[c_loc]);
        if (location == "p")
            location = "neither_housing_nor_transit";
        else if (location == "h")
            location = "housing_authority";
        else if (location == "t")
            location = "transit_authority";
        else
            missing = true;
        std::string inout = lower(row[c_inout]);
        if (inout == "i")
            inout = "inside";
        else if (inout == "o")
            inout = "outside";
        else
            missing = true;
        if (city.empty()) missing = true;

        int weapon = 0;
        for (int column : c_weapons) {
            const int v = flag(row[column]);
            if (v < 0) missing = true;
            weapon |= v == 1;
        }
        if (missing) {
            ++table.dropped_rows;
            continue;
        }
        out.push_back(city);
        out.push_back(location);
        out.push_back(inout);
        out.push_back(weapon ? "1" : "0");
        table.rows.push_back(std::move(out));
    }
    return table;
}

} // namespace rulelist
