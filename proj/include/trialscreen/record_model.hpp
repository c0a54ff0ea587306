#ifndef TRIALSCREEN_RECORD_MODEL_HPP
#define TRIALSCREEN_RECORD_MODEL_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "trialscreen/date.hpp"

namespace trialscreen {

enum class ReportKind {
    encounter_diagnosis,
    encounter_note,
    problem_list,
    echo,
    lab,
    medication,
};

const char* to_string(ReportKind kind);
std::optional<ReportKind> parse_report_kind(std::string_view s);

using ScalarValue = std::variant<double, std::string>;

/// One analyte row of a lab report. `value` is unset when the source
/// carried a non-numeric value. `value_text` is empty when the source
/// was a JSON number; otherwise it keeps the raw string (which may
/// still parse as a number — noisy exports stringify values).
struct LabEntry {
    std::string name;
    std::optional<double> value;
    std::string value_text;
    std::string unit;
    std::optional<Date> date;  // overrides the report date when present

    bool operator==(const LabEntry&) const = default;
};

struct MedicationEntry {
    std::string name;
    std::optional<Date> start_date;
    std::optional<Date> end_date;

    bool operator==(const MedicationEntry&) const = default;
};

struct Report {
    std::string report_id;
    ReportKind kind = ReportKind::encounter_note;
    std::optional<Date> date;
    std::map<std::string, ScalarValue> structured;
    std::string text;
    std::vector<LabEntry> analytes;          // lab reports
    std::vector<MedicationEntry> medications;  // medication reports

    bool operator==(const Report&) const = default;
};

struct PatientRecord {
    std::string patient_id;
    std::vector<Report> reports;

    bool operator==(const PatientRecord&) const = default;
};

enum class IssueCode {
    missing_date,
    missing_end_date,
    unparseable_value,
    unknown_kind,
};

const char* to_string(IssueCode code);

/// missing_end_date leaves the report usable; unknown_kind means the
/// report was skipped at load. A malformed input line is reported as
/// unparseable_value with an empty patient_id and the line number in
/// the message.
struct DataQualityIssue {
    std::string patient_id;
    std::string report_id;
    IssueCode code = IssueCode::unparseable_value;
    std::string message;
};

struct LoadResult {
    std::vector<PatientRecord> cohort;
    std::vector<DataQualityIssue> issues;
};

/// Reads a line-delimited JSON cohort file, one patient object per
/// line. Malformed lines (bad JSON, missing/empty/duplicate
/// patient_id) become issues, never silent drops; patient order is
/// preserved. Throws std::runtime_error if the file cannot be read.
LoadResult load_records(const std::string& path);

/// Parses one patient line. On failure returns nullopt and appends a
/// malformed-line issue. Reports with an unknown kind are dropped with
/// an unknown_kind issue; everything else is kept as-is for
/// validate_record to inspect.
std::optional<PatientRecord> parse_patient_line(const std::string& line, size_t line_no,
                                                std::vector<DataQualityIssue>& issues);

/// Pure rule check over a parsed record: missing report dates,
/// medication entries without an end date, non-numeric lab values.
/// One issue per violated rule, deterministic.
std::vector<DataQualityIssue> validate_record(const PatientRecord& record);

/// Serializes a patient back to the line schema (inverse of
/// parse_patient_line for everything the model retains).
std::string to_json_line(const PatientRecord& record);

}  // namespace trialscreen

#endif
