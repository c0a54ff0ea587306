#include "trialscreen/normalizer.hpp"

#include <algorithm>

#include "trialscreen/text.hpp"

namespace trialscreen {

namespace {

struct ElementSpec {
    const char* element;
    const char* unit;
    double lo, hi;  // plausibility range; lo > hi means unbounded
};

// Ranges guard against outliers in noisy exports; out-of-range values
// become warnings downstream, not hard pass/fail.
const ElementSpec kElements[] = {
    {"age", "years", 1, 0},
    {"bmi", "kg/m2", 10, 100},
    {"hemoglobin", "g/dL", 3, 25},
    {"gfr", "mL/min/1.73m2", 1, 250},
    {"systolic_bp", "mmHg", 50, 300},
    {"diastolic_bp", "mmHg", 20, 200},
    {"bnp", "pg/mL", 0, 70000},
};

const ElementSpec* spec_for(const std::string& element) {
    for (const ElementSpec& s : kElements)
        if (element == s.element) return &s;
    return nullptr;
}

/// Canonical element for a lab analyte name, or nullptr.
const char* analyte_element(const std::string& name) {
    std::string n = to_lower(name);
    if (n == "hemoglobin" || n == "hgb") return "hemoglobin";
    if (n == "gfr" || n == "egfr") return "gfr";
    if (n == "bnp" || n == "nt-probnp") return "bnp";
    return nullptr;
}

Fact make_fact(const std::string& element, double value, const Date& date,
               const std::string& report_id, const std::string& detail) {
    const ElementSpec* spec = spec_for(element);
    Fact f;
    f.element = element;
    f.value = value;
    f.unit = spec ? spec->unit : "";
    f.date = date;
    f.provenance = {report_id, detail};
    f.plausible = value_plausible(element, value);
    return f;
}

}  // namespace

bool value_plausible(const std::string& element, double value) {
    const ElementSpec* spec = spec_for(element);
    if (!spec || spec->lo > spec->hi) return true;
    return value >= spec->lo && value <= spec->hi;
}

NormalizeResult extract_structured_values(const PatientRecord& record) {
    NormalizeResult result;
    for (const Report& report : record.reports) {
        if (!report.date) continue;  // flagged at load; cannot date a fact

        for (const auto& [field, value] : report.structured) {
            if (!spec_for(field)) continue;  // unrecognized fields ignored
            if (std::holds_alternative<double>(value)) {
                result.facts.push_back(make_fact(field, std::get<double>(value), *report.date,
                                                 report.report_id, field));
            } else {
                // recognized field with a string value: try to salvage a number
                const std::string& text = std::get<std::string>(value);
                try {
                    size_t pos = 0;
                    double v = std::stod(text, &pos);
                    if (pos == text.size()) {
                        result.facts.push_back(
                            make_fact(field, v, *report.date, report.report_id, field));
                        continue;
                    }
                } catch (const std::exception&) {
                }
                result.issues.push_back({record.patient_id, report.report_id,
                                         IssueCode::unparseable_value,
                                         "field \"" + field + "\" has non-numeric value \"" +
                                             text + "\"; skipped"});
            }
        }

        for (const LabEntry& entry : report.analytes) {
            const char* element = analyte_element(entry.name);
            if (!element) continue;
            if (!entry.value) {
                result.issues.push_back({record.patient_id, report.report_id,
                                         IssueCode::unparseable_value,
                                         "analyte \"" + entry.name + "\" has non-numeric value \"" +
                                             entry.value_text + "\"; skipped"});
                continue;
            }
            Date date = entry.date ? *entry.date : *report.date;
            result.facts.push_back(
                make_fact(element, *entry.value, date, report.report_id, entry.name));
        }
    }
    return result;
}

std::optional<Fact> latest_value(std::span<const Fact> facts, const std::string& element) {
    const Fact* best = nullptr;
    for (const Fact& f : facts) {
        if (f.element != element) continue;
        if (!best || f.date > best->date ||
            (f.date == best->date && f.provenance.report_id > best->provenance.report_id)) {
            best = &f;
        }
    }
    if (!best) return std::nullopt;
    return *best;
}

std::vector<MedClassCount> count_drug_classes(const PatientRecord& record,
                                              const DrugLexicon& lex,
                                              const std::set<std::string>& classes,
                                              const Date& as_of) {
    std::map<std::string, MedClassCount> by_class;
    for (const std::string& cls : classes) by_class[cls] = {cls, 0, {}};

    for (const Report& report : record.reports) {
        if (report.kind != ReportKind::medication) continue;
        for (const MedicationEntry& entry : report.medications) {
            bool started = !entry.start_date || *entry.start_date <= as_of;
            bool not_ended = !entry.end_date || *entry.end_date >= as_of;
            if (!started || !not_ended) continue;
            auto match = match_drug(entry.name, lex);
            if (!match || !classes.count(match->class_name)) continue;
            // keyed by matched lexicon name so dose variants collapse
            by_class[match->class_name].drugs.insert(match->matched_name);
        }
    }

    std::vector<MedClassCount> result;
    for (auto& [cls, slot] : by_class) {
        slot.count = static_cast<int>(slot.drugs.size());
        result.push_back(std::move(slot));
    }
    return result;
}

}  // namespace trialscreen
