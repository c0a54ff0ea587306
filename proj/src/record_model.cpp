#include "trialscreen/record_model.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace trialscreen {

using nlohmann::json;

const char* to_string(ReportKind kind) {
    switch (kind) {
        case ReportKind::encounter_diagnosis: return "encounter_diagnosis";
        case ReportKind::encounter_note: return "encounter_note";
        case ReportKind::problem_list: return "problem_list";
        case ReportKind::echo: return "echo";
        case ReportKind::lab: return "lab";
        case ReportKind::medication: return "medication";
    }
    return "?";
}

std::optional<ReportKind> parse_report_kind(std::string_view s) {
    if (s == "encounter_diagnosis") return ReportKind::encounter_diagnosis;
    if (s == "encounter_note") return ReportKind::encounter_note;
    if (s == "problem_list") return ReportKind::problem_list;
    if (s == "echo") return ReportKind::echo;
    if (s == "lab") return ReportKind::lab;
    if (s == "medication") return ReportKind::medication;
    return std::nullopt;
}

const char* to_string(IssueCode code) {
    switch (code) {
        case IssueCode::missing_date: return "missing_date";
        case IssueCode::missing_end_date: return "missing_end_date";
        case IssueCode::unparseable_value: return "unparseable_value";
        case IssueCode::unknown_kind: return "unknown_kind";
    }
    return "?";
}

namespace {

std::optional<Date> date_from(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return std::nullopt;
    return parse_date(it->get<std::string>());
}

LabEntry parse_analyte(const json& j) {
    LabEntry e;
    e.name = j.value("name", "");
    e.unit = j.value("unit", "");
    e.date = date_from(j, "date");
    auto it = j.find("value");
    if (it != j.end()) {
        if (it->is_number()) {
            e.value = it->get<double>();
        } else if (it->is_string()) {
            e.value_text = it->get<std::string>();
            try {
                size_t pos = 0;
                double v = std::stod(e.value_text, &pos);
                if (pos == e.value_text.size()) e.value = v;
            } catch (const std::exception&) {
            }
        } else {
            e.value_text = it->dump();
        }
    }
    return e;
}

MedicationEntry parse_medication(const json& j) {
    MedicationEntry e;
    e.name = j.value("name", "");
    e.start_date = date_from(j, "start_date");
    e.end_date = date_from(j, "end_date");
    return e;
}

void malformed(std::vector<DataQualityIssue>& issues, size_t line_no, const std::string& what) {
    issues.push_back({"", "", IssueCode::unparseable_value,
                      "line " + std::to_string(line_no) + ": " + what});
}

}  // namespace

std::optional<PatientRecord> parse_patient_line(const std::string& line, size_t line_no,
                                                std::vector<DataQualityIssue>& issues) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        malformed(issues, line_no, std::string("JSON parse error: ") + e.what());
        return std::nullopt;
    }
    if (!j.is_object()) {
        malformed(issues, line_no, "patient line is not a JSON object");
        return std::nullopt;
    }
    PatientRecord rec;
    rec.patient_id = j.value("patient_id", "");
    if (rec.patient_id.empty()) {
        malformed(issues, line_no, "missing or empty patient_id");
        return std::nullopt;
    }

    auto reports = j.find("reports");
    if (reports != j.end() && reports->is_array()) {
        for (const json& rj : *reports) {
            if (!rj.is_object()) continue;
            std::string kind_str = rj.value("kind", "");
            auto kind = parse_report_kind(kind_str);
            std::string report_id = rj.value("report_id", "");
            if (!kind) {
                issues.push_back({rec.patient_id, report_id, IssueCode::unknown_kind,
                                  "unknown report kind \"" + kind_str + "\"; report skipped"});
                continue;
            }
            Report r;
            r.report_id = report_id;
            r.kind = *kind;
            r.date = date_from(rj, "date");
            r.text = rj.value("text", "");
            auto structured = rj.find("structured");
            if (structured != rj.end() && structured->is_object()) {
                for (auto& [key, value] : structured->items()) {
                    if (key == "analytes" && value.is_array()) {
                        for (const json& a : value)
                            if (a.is_object()) r.analytes.push_back(parse_analyte(a));
                    } else if (key == "medications" && value.is_array()) {
                        for (const json& m : value)
                            if (m.is_object()) r.medications.push_back(parse_medication(m));
                    } else if (value.is_number()) {
                        r.structured.emplace(key, value.get<double>());
                    } else if (value.is_string()) {
                        r.structured.emplace(key, value.get<std::string>());
                    }
                }
            }
            rec.reports.push_back(std::move(r));
        }
    }
    return rec;
}

std::vector<DataQualityIssue> validate_record(const PatientRecord& record) {
    std::vector<DataQualityIssue> issues;
    for (const Report& r : record.reports) {
        if (!r.date) {
            issues.push_back({record.patient_id, r.report_id, IssueCode::missing_date,
                              "report has no parseable date"});
        }
        for (const LabEntry& e : r.analytes) {
            if (!e.value) {
                issues.push_back({record.patient_id, r.report_id, IssueCode::unparseable_value,
                                  "lab analyte \"" + e.name + "\" has non-numeric value \"" +
                                      e.value_text + "\""});
            }
        }
        for (const MedicationEntry& e : r.medications) {
            if (!e.end_date) {
                issues.push_back({record.patient_id, r.report_id, IssueCode::missing_end_date,
                                  "medication \"" + e.name + "\" has no end_date; treated as active"});
            }
        }
    }
    return issues;
}

LoadResult load_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open records file: " + path);

    LoadResult result;
    std::set<std::string> seen_ids;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (auto rec = parse_patient_line(line, line_no, result.issues)) {
            if (!seen_ids.insert(rec->patient_id).second) {
                malformed(result.issues, line_no,
                          "duplicate patient_id \"" + rec->patient_id + "\"");
                continue;
            }
            auto validation = validate_record(*rec);
            result.issues.insert(result.issues.end(), validation.begin(), validation.end());
            result.cohort.push_back(std::move(*rec));
        }
    }
    return result;
}

std::string to_json_line(const PatientRecord& record) {
    json j;
    j["patient_id"] = record.patient_id;
    j["reports"] = json::array();
    for (const Report& r : record.reports) {
        json rj;
        rj["report_id"] = r.report_id;
        rj["kind"] = to_string(r.kind);
        if (r.date) rj["date"] = r.date->to_string();
        rj["text"] = r.text;
        json structured = json::object();
        for (const auto& [key, value] : r.structured) {
            if (std::holds_alternative<double>(value))
                structured[key] = std::get<double>(value);
            else
                structured[key] = std::get<std::string>(value);
        }
        if (!r.analytes.empty()) {
            json arr = json::array();
            for (const LabEntry& e : r.analytes) {
                json a;
                a["name"] = e.name;
                if (!e.value_text.empty())
                    a["value"] = e.value_text;
                else if (e.value)
                    a["value"] = *e.value;
                a["unit"] = e.unit;
                if (e.date) a["date"] = e.date->to_string();
                arr.push_back(std::move(a));
            }
            structured["analytes"] = std::move(arr);
        }
        if (!r.medications.empty()) {
            json arr = json::array();
            for (const MedicationEntry& e : r.medications) {
                json m;
                m["name"] = e.name;
                if (e.start_date) m["start_date"] = e.start_date->to_string();
                if (e.end_date) m["end_date"] = e.end_date->to_string();
                arr.push_back(std::move(m));
            }
            structured["medications"] = std::move(arr);
        }
        rj["structured"] = std::move(structured);
        j["reports"].push_back(std::move(rj));
    }
    return j.dump();
}

}  // namespace trialscreen
