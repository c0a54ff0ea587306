#ifndef TRIALSCREEN_NORMALIZER_HPP
#define TRIALSCREEN_NORMALIZER_HPP

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "trialscreen/lexicons.hpp"
#include "trialscreen/record_model.hpp"

namespace trialscreen {

struct Provenance {
    std::string report_id;
    std::string detail;  // structured field name, analyte name, or text span
};

/// One extracted numeric data element. `plausible` is false when the
/// value falls outside the element's plausibility range; such facts
/// are surfaced to the rules engine as ambiguous, never as hard
/// pass/fail.
struct Fact {
    std::string element;
    double value = 0;
    std::string unit;
    Date date;
    Provenance provenance;
    bool plausible = true;
};

struct MedClassCount {
    std::string class_name;
    int count = 0;                // == drugs.size()
    std::set<std::string> drugs;  // matched lexicon names, lowercase
};

struct NormalizeResult {
    std::vector<Fact> facts;
    std::vector<DataQualityIssue> issues;
};

/// Recognized numeric elements: age (years), bmi (kg/m2), hemoglobin
/// (g/dL), gfr (mL/min/1.73m2), systolic_bp / diastolic_bp (mmHg),
/// bnp (pg/mL). Scalar structured fields are matched by exact
/// lowercase element name on any report kind; lab analytes also match
/// the alias sets {hemoglobin, hgb}, {gfr, egfr}, {bnp, nt-probnp}
/// case-insensitively. Non-numeric values in recognized fields are
/// skipped with an unparseable_value issue. Reports without a date
/// yield no facts (the missing_date issue is emitted at load).
NormalizeResult extract_structured_values(const PatientRecord& record);

/// The fact for `element` with the maximum date; date ties broken by
/// the lexicographically greatest report_id. Searches facts from all
/// report kinds.
std::optional<Fact> latest_value(std::span<const Fact> facts, const std::string& element);

/// Distinct active medications per requested drug class. Active:
/// start_date <= as_of and (no end_date or end_date >= as_of). A drug
/// matched by several entries counts once; an entry whose start_date
/// failed to parse is treated as started.
std::vector<MedClassCount> count_drug_classes(const PatientRecord& record,
                                              const DrugLexicon& lex,
                                              const std::set<std::string>& classes,
                                              const Date& as_of);

/// Plausibility range check for a recognized element; elements with no
/// configured range are always plausible.
bool value_plausible(const std::string& element, double value);

}  // namespace trialscreen

#endif
