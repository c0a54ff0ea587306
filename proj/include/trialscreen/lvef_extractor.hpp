#ifndef TRIALSCREEN_LVEF_EXTRACTOR_HPP
#define TRIALSCREEN_LVEF_EXTRACTOR_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trialscreen/record_model.hpp"
#include "trialscreen/text.hpp"

namespace trialscreen {

enum class QualCategory {
    normal,
    low_normal,
    preserved,
    mildly_reduced,
    moderately_reduced,
    severely_reduced,
};

const char* to_string(QualCategory cat);

enum class LvefForm { numeric, range, qualitative };

const char* to_string(LvefForm form);

struct LvefMention {
    Span sentence;          // offsets into the report text
    std::string sentence_text;
    LvefForm form = LvefForm::numeric;
    double value = 0;       // numeric: the value; range: unused
    double low = 0, high = 0;  // range only, normalized low <= high
    QualCategory category = QualCategory::normal;  // qualitative only
    std::string report_id;
    std::optional<Date> date;
};

enum class ThresholdRelation { at_or_above, below, straddles, indeterminate };

const char* to_string(ThresholdRelation rel);

struct LvefFinding {
    LvefMention mention;
    ThresholdRelation relation = ThresholdRelation::indeterminate;
    double threshold = 45;
};

struct LvefResolution {
    std::optional<LvefFinding> finding;
    int extraction_misses = 0;  // selected sentences with no extractable value
};

/// Threshold relation for a resolved mention. A range straddles the
/// threshold iff low < threshold <= high; mildly reduced qualitative
/// values are indeterminate (boundary-adjacent, routed to review).
ThresholdRelation relation_for(const LvefMention& mention, double threshold);

/// Two-stage extraction over echo and note text: four selector
/// patterns pick candidate sentences, then value patterns run
/// range-first, numeric, qualitative. Patterns are compiled once and
/// are safe for concurrent use.
class LvefExtractor {
public:
    LvefExtractor();

    /// Sentences matched by at least one selector, in text order.
    std::vector<Span> select_sentences(std::string_view text) const;

    /// Exactly one mention per selected sentence, preferring range >
    /// numeric > qualitative. Returns nullopt when nothing extractable
    /// survives validation (values must lie in [0, 100]); the caller
    /// counts that as an extraction miss.
    std::optional<LvefMention> extract_value(std::string_view sentence) const;

    /// Gathers mentions from all echo reports (encounter notes as
    /// fallback when no echo mention exists), picks the most recent
    /// mention-bearing report, prefers numeric/range within it, and
    /// computes the threshold relation.
    LvefResolution resolve(const PatientRecord& record, double threshold) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace trialscreen

#endif
