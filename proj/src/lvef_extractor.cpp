#include "trialscreen/lvef_extractor.hpp"

#include <algorithm>
#include <memory>
#include <regex>

namespace trialscreen {

const char* to_string(QualCategory cat) {
    switch (cat) {
        case QualCategory::normal: return "normal";
        case QualCategory::low_normal: return "low_normal";
        case QualCategory::preserved: return "preserved";
        case QualCategory::mildly_reduced: return "mildly_reduced";
        case QualCategory::moderately_reduced: return "moderately_reduced";
        case QualCategory::severely_reduced: return "severely_reduced";
    }
    return "?";
}

const char* to_string(LvefForm form) {
    switch (form) {
        case LvefForm::numeric: return "numeric";
        case LvefForm::range: return "range";
        case LvefForm::qualitative: return "qualitative";
    }
    return "?";
}

const char* to_string(ThresholdRelation rel) {
    switch (rel) {
        case ThresholdRelation::at_or_above: return "at_or_above";
        case ThresholdRelation::below: return "below";
        case ThresholdRelation::straddles: return "straddles";
        case ThresholdRelation::indeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

// EF synonyms of selector 1 (Table 4 row 1).
const char* kEfSyn =
    "left\\s+ventricular\\s+ejection\\s+fraction|"
    "left\\s+ventricle\\s+ejection\\s+fraction|"
    "lv\\s+ejection\\s+fraction|lvef|ejection\\s+fraction|ef";

// LV-function phrases of selectors 2/3 (Table 4 row 2).
const char* kLvFunc =
    "left\\s+ventricular\\s+systolic\\s+function|"
    "left\\s+ventricular\\s+function|"
    "systolic\\s+function\\s+of\\s+the\\s+left\\s+ventricle|"
    "lv\\s+systolic\\s+function|"
    "left\\s+ventricular\\s+ejection\\s+fraction|"
    "ejection\\s+fraction|"
    "left\\s+ventricle";

struct QualEntry {
    const char* phrase;
    QualCategory category;
};

// Qualitative vocabulary (Table 4 rows 2/3), longest-first so the
// alternation prefers the specific form. "mildly/moderately reduced"
// round out the documented families.
const QualEntry kQualVocab[] = {
    {"severely globally reduced", QualCategory::severely_reduced},
    {"normal global", QualCategory::normal},
    {"low normal", QualCategory::low_normal},
    {"well preserved", QualCategory::preserved},
    {"severely reduced", QualCategory::severely_reduced},
    {"severely decreased", QualCategory::severely_reduced},
    {"severely depressed", QualCategory::severely_reduced},
    {"markedly decreased", QualCategory::severely_reduced},
    {"markedly reduced", QualCategory::severely_reduced},
    {"markedly depressed", QualCategory::severely_reduced},
    {"moderately decreased", QualCategory::moderately_reduced},
    {"moderately depressed", QualCategory::moderately_reduced},
    {"moderately reduced", QualCategory::moderately_reduced},
    {"mildly decreased", QualCategory::mildly_reduced},
    {"mildly depressed", QualCategory::mildly_reduced},
    {"mildly reduced", QualCategory::mildly_reduced},
    {"preserved", QualCategory::preserved},
    {"severe", QualCategory::severely_reduced},
    {"normal", QualCategory::normal},
};

// Extraction-only additions for sentences selected by row 4
// ("moderate/marked/severe ... dysfunction").
const QualEntry kQualExtractExtra[] = {
    {"moderate", QualCategory::moderately_reduced},
    {"marked", QualCategory::severely_reduced},
};

std::string qual_alternation(bool with_extra) {
    std::string out;
    for (const QualEntry& q : kQualVocab) {
        if (!out.empty()) out += '|';
        std::string p = q.phrase;
        size_t pos;
        while ((pos = p.find(' ')) != std::string::npos) p.replace(pos, 1, "\\s+");
        out += p;
    }
    if (with_extra) {
        for (const QualEntry& q : kQualExtractExtra) {
            out += '|';
            out += q.phrase;
        }
    }
    return out;
}

std::optional<QualCategory> qual_category(std::string_view matched) {
    // normalize internal whitespace before lookup
    std::string key;
    bool in_space = false;
    for (char c : matched) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
        } else {
            if (in_space && !key.empty()) key += ' ';
            in_space = false;
            key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    for (const QualEntry& q : kQualVocab)
        if (key == q.phrase) return q.category;
    for (const QualEntry& q : kQualExtractExtra)
        if (key == q.phrase) return q.category;
    return std::nullopt;
}

// substring anchors for the cheap prescan before any regex runs
const char* kPrescanAnchors[] = {"ef", "ejection", "function", "ventric"};

}  // namespace

struct LvefExtractor::Impl {
    std::regex selectors[4];
    std::regex range_value;
    std::regex single_value;
    std::regex qual_value;
};

LvefExtractor::LvefExtractor() {
    auto impl = std::make_shared<Impl>();
    auto flags = std::regex::icase | std::regex::optimize;
    std::string ef(kEfSyn), lv(kLvFunc), qual = qual_alternation(false);

    // Table 4 row 1: EF synonym followed by a number and '%'
    impl->selectors[0] =
        std::regex("\\b(?:" + ef + ")\\b[^%]*?\\d+(?:\\.\\d+)?\\s*%", flags);
    // row 2: LV-function phrase followed by a qualitative descriptor
    impl->selectors[1] = std::regex("\\b(?:" + lv + ")\\b.*?\\b(?:" + qual + ")\\b", flags);
    // row 3: descriptor adjacent (within two words) to an LV phrase
    impl->selectors[2] =
        std::regex("\\b(?:" + qual + ")\\b\\W+(?:\\w+\\W+){0,2}(?:" + lv + ")\\b", flags);
    // row 4: moderate|marked|severe + LV dysfunction phrase
    impl->selectors[3] = std::regex(
        "\\b(?:moderate|marked|severe)\\s+(?:lv\\s+systolic\\s+dysfunction|"
        "left\\s+ventricular\\s+dysfunction|left\\s+ventricular\\s+systolic\\s+dysfunction)\\b",
        flags);

    // row 5: range, first number may carry its own '%'
    impl->range_value = std::regex(
        "(\\d+(?:\\.\\d+)?)\\s*%?\\s*(?:-|–|—|to)\\s*(\\d+(?:\\.\\d+)?)\\s*%", flags);
    // row 6: freely available value
    impl->single_value = std::regex("(\\d+(?:\\.\\d+)?)\\s*%", flags);
    impl->qual_value = std::regex("\\b(" + qual_alternation(true) + ")\\b", flags);

    impl_ = std::move(impl);
}

std::vector<Span> LvefExtractor::select_sentences(std::string_view text) const {
    std::vector<Span> selected;
    for (const Span& s : split_sentences(text)) {
        std::string_view sentence = text.substr(s.begin, s.length());
        std::string lowered = to_lower(sentence);
        bool anchored = false;
        for (const char* anchor : kPrescanAnchors) {
            if (lowered.find(anchor) != std::string::npos) {
                anchored = true;
                break;
            }
        }
        if (!anchored) continue;
        for (const std::regex& selector : impl_->selectors) {
            if (std::regex_search(sentence.begin(), sentence.end(), selector)) {
                selected.push_back(s);
                break;
            }
        }
    }
    return selected;
}

std::optional<LvefMention> LvefExtractor::extract_value(std::string_view sentence) const {
    auto in_bounds = [](double v) { return v >= 0 && v <= 100; };
    std::match_results<std::string_view::const_iterator> m;

    if (std::regex_search(sentence.begin(), sentence.end(), m, impl_->range_value)) {
        double a = std::stod(m[1].str());
        double b = std::stod(m[2].str());
        double low = std::min(a, b), high = std::max(a, b);
        if (!in_bounds(low) || !in_bounds(high)) return std::nullopt;  // extraction miss
        LvefMention mention;
        mention.form = LvefForm::range;
        mention.low = low;
        mention.high = high;
        return mention;
    }
    if (std::regex_search(sentence.begin(), sentence.end(), m, impl_->single_value)) {
        double v = std::stod(m[1].str());
        if (!in_bounds(v)) return std::nullopt;
        LvefMention mention;
        mention.form = LvefForm::numeric;
        mention.value = v;
        return mention;
    }
    if (std::regex_search(sentence.begin(), sentence.end(), m, impl_->qual_value)) {
        auto category = qual_category(m[1].str());
        if (!category) return std::nullopt;
        LvefMention mention;
        mention.form = LvefForm::qualitative;
        mention.category = *category;
        return mention;
    }
    return std::nullopt;
}

ThresholdRelation relation_for(const LvefMention& mention, double threshold) {
    switch (mention.form) {
        case LvefForm::numeric:
            return mention.value >= threshold ? ThresholdRelation::at_or_above
                                              : ThresholdRelation::below;
        case LvefForm::range:
            if (mention.low >= threshold) return ThresholdRelation::at_or_above;
            if (mention.high < threshold) return ThresholdRelation::below;
            return ThresholdRelation::straddles;
        case LvefForm::qualitative:
            switch (mention.category) {
                case QualCategory::normal:
                case QualCategory::low_normal:
                case QualCategory::preserved:
                    return ThresholdRelation::at_or_above;
                case QualCategory::mildly_reduced:
                    return ThresholdRelation::indeterminate;
                case QualCategory::moderately_reduced:
                case QualCategory::severely_reduced:
                    return ThresholdRelation::below;
            }
    }
    return ThresholdRelation::indeterminate;
}

namespace {

struct ReportMentions {
    const Report* report = nullptr;
    std::vector<LvefMention> mentions;
};

/// Recency order: dated beats undated, then by date, then report_id.
bool more_recent(const Report& a, const Report& b) {
    if (a.date.has_value() != b.date.has_value()) return a.date.has_value();
    if (a.date != b.date) return a.date > b.date;
    return a.report_id > b.report_id;
}

}  // namespace

LvefResolution LvefExtractor::resolve(const PatientRecord& record, double threshold) const {
    LvefResolution result;

    auto gather = [&](ReportKind kind) {
        std::vector<ReportMentions> out;
        for (const Report& report : record.reports) {
            if (report.kind != kind || report.text.empty()) continue;
            ReportMentions rm;
            rm.report = &report;
            for (const Span& span : select_sentences(report.text)) {
                auto mention = extract_value(
                    std::string_view(report.text).substr(span.begin, span.length()));
                if (!mention) {
                    result.extraction_misses++;
                    continue;
                }
                mention->sentence = span;
                mention->sentence_text = report.text.substr(span.begin, span.length());
                mention->report_id = report.report_id;
                mention->date = report.date;
                rm.mentions.push_back(std::move(*mention));
            }
            if (!rm.mentions.empty()) out.push_back(std::move(rm));
        }
        return out;
    };

    auto candidates = gather(ReportKind::echo);
    if (candidates.empty()) candidates = gather(ReportKind::encounter_note);
    if (candidates.empty()) return result;

    const ReportMentions* best = &candidates[0];
    for (const ReportMentions& rm : candidates)
        if (more_recent(*rm.report, *best->report)) best = &rm;

    // numeric/range preferred over qualitative; first in text order wins
    const LvefMention* chosen = nullptr;
    for (const LvefMention& m : best->mentions) {
        if (m.form != LvefForm::qualitative) {
            chosen = &m;
            break;
        }
    }
    if (!chosen) chosen = &best->mentions[0];

    LvefFinding finding;
    finding.mention = *chosen;
    finding.threshold = threshold;
    finding.relation = relation_for(*chosen, threshold);
    result.finding = std::move(finding);
    return result;
}

}  // namespace trialscreen
