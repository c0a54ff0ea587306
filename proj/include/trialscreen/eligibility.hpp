#ifndef TRIALSCREEN_ELIGIBILITY_HPP
#define TRIALSCREEN_ELIGIBILITY_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trialscreen/lexicons.hpp"
#include "trialscreen/lvef_extractor.hpp"
#include "trialscreen/normalizer.hpp"
#include "trialscreen/record_model.hpp"
#include "trialscreen/term_classifier.hpp"

namespace trialscreen {

/// Everything the criteria can reference about one patient. Numeric
/// elements hold the most recent fact; presence elements always have
/// a finding (present=false when nothing matched).
struct PatientProfile {
    std::string patient_id;
    std::map<std::string, Fact> numerics;
    std::optional<LvefFinding> lvef;
    int lvef_extraction_misses = 0;
    std::map<std::string, PresenceFinding> presence;
    std::vector<MedClassCount> med_counts;
    std::vector<DataQualityIssue> issues;
};

/// Numeric profile elements evaluable by gte/lte/between/count_gte.
const std::set<std::string>& numeric_elements();
/// Presence profile elements evaluable by present/absent.
const std::set<std::string>& presence_elements();
/// Element -> report kinds scanned for it.
const std::map<std::string, std::set<ReportKind>>& presence_routing();

enum class CriterionKind { inclusion, exclusion };
const char* to_string(CriterionKind kind);

enum class PredOp { gte, lte, between, present, absent, count_gte, all_of, any_of };

struct PredicateNode {
    PredOp op = PredOp::present;
    std::string element;  // leaf ops only
    double value = 0;     // gte/lte/count_gte
    double low = 0, high = 0;  // between
    std::vector<PredicateNode> children;  // all_of/any_of
};

enum class Policy { warn, fail, pass };
const char* to_string(Policy p);

struct Criterion {
    std::string id;
    CriterionKind kind = CriterionKind::inclusion;
    PredicateNode predicate;
    std::vector<ReportKind> sources;
    Policy on_missing = Policy::warn;
    Policy on_ambiguous = Policy::warn;
    bool placeholder = false;  // threshold not confirmed by the user
};

struct CriteriaSet {
    std::vector<Criterion> criteria;  // evaluation order = file order

    bool has_placeholders() const;
    /// Threshold of the first lvef criterion, or 45 when none.
    double lvef_threshold() const;
};

/// Loads and validates a criteria file (JSON, {"criteria": [...]}).
/// Unknown elements, type mismatches and malformed predicates are
/// fatal with the criterion id or index in the message.
CriteriaSet parse_criteria(const std::string& path);

enum class OutcomeStatus { satisfied, violated, warning };
const char* to_string(OutcomeStatus status);

struct CriterionOutcome {
    std::string criterion_id;
    OutcomeStatus status = OutcomeStatus::satisfied;
    std::vector<std::string> evidence;
    std::string note;
};

enum class Verdict { eligible, excluded, needs_review };
const char* to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

struct ScreeningDecision {
    std::string patient_id;
    Verdict verdict = Verdict::eligible;
    std::vector<CriterionOutcome> outcomes;  // one per criterion, evaluation order
    std::optional<std::string> first_discard_reason;
    std::vector<std::string> warnings;  // criterion ids with warning outcomes
};

struct ProfileConfig {
    Date as_of;
    double lvef_threshold = 45;
};

/// Runs all three extraction module families over one record and
/// assembles the profile. Deterministic; missing data yields absent
/// fields, never errors.
PatientProfile build_profile(const PatientRecord& record, const Lexicons& lexicons,
                             const LvefExtractor& extractor, const ProfileConfig& config);

/// Evaluates one criterion. Missing elements follow on_missing;
/// ambiguous input (ambiguous presence, out-of-plausibility numerics,
/// straddling or indeterminate LVEF) follows on_ambiguous.
CriterionOutcome evaluate_criterion(const PatientProfile& profile, const Criterion& criterion);

/// Evaluates every criterion (the trace is never short-circuited).
/// excluded: some inclusion violated or some exclusion satisfied;
/// needs_review: no hard exclusion and at least one warning;
/// eligible otherwise. first_discard_reason is the first excluding
/// criterion in evaluation order.
ScreeningDecision evaluate_patient(const PatientProfile& profile, const CriteriaSet& set);

/// Verdict/first-discard/warnings recomputed from an outcome list
/// (used by the decision-semantics property checks).
ScreeningDecision decision_from_outcomes(const std::string& patient_id,
                                         const CriteriaSet& set,
                                         std::vector<CriterionOutcome> outcomes);

std::string decision_to_json(const ScreeningDecision& decision);
ScreeningDecision decision_from_json(const std::string& line);
std::string decision_to_csv(const ScreeningDecision& decision);
const char* decision_csv_header();

}  // namespace trialscreen

#endif
