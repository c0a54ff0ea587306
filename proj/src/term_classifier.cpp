#include "trialscreen/term_classifier.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace trialscreen {

const char* to_string(AssertionStatus status) {
    switch (status) {
        case AssertionStatus::affirmed: return "affirmed";
        case AssertionStatus::negated: return "negated";
        case AssertionStatus::family: return "family";
        case AssertionStatus::historical: return "historical";
        case AssertionStatus::hypothetical: return "hypothetical";
        case AssertionStatus::screening: return "screening";
    }
    return "?";
}

int precedence(AssertionStatus status) {
    switch (status) {
        case AssertionStatus::negated: return 5;
        case AssertionStatus::family: return 4;
        case AssertionStatus::screening: return 3;
        case AssertionStatus::hypothetical: return 2;
        case AssertionStatus::historical: return 1;
        case AssertionStatus::affirmed: return 0;
    }
    return 0;
}

namespace {

char lower_char(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> words;
    size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            i++;
            continue;
        }
        size_t b = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) i++;
        words.emplace_back(s.substr(b, i - b));
    }
    return words;
}

bool boundary_ok(std::string_view text, size_t begin, size_t end) {
    if (begin > 0 && is_word_char(text[begin - 1])) return false;
    if (end < text.size() && is_word_char(text[end])) return false;
    return true;
}

/// Matches one phrase word at `pos`: first letter case-insensitive,
/// the rest exactly as written in the lexicon. Returns end position.
std::optional<size_t> match_word(std::string_view text, size_t pos, const std::string& word) {
    if (pos >= text.size()) return std::nullopt;
    if (lower_char(text[pos]) != lower_char(word[0])) return std::nullopt;
    size_t i = pos + 1, j = 1;
    for (; j < word.size(); i++, j++) {
        if (i >= text.size() || text[i] != word[j]) return std::nullopt;
    }
    // the matched run must end at a word boundary within the word
    return i;
}

/// Tries the full phrase at `pos` (words joined by flexible
/// whitespace). Returns the end offset of the match.
std::optional<size_t> match_phrase(std::string_view text, size_t pos,
                                   const std::vector<std::string>& words) {
    size_t cur = pos;
    for (size_t w = 0; w < words.size(); w++) {
        if (w > 0) {
            size_t ws = cur;
            while (cur < text.size() && std::isspace(static_cast<unsigned char>(text[cur]))) cur++;
            if (cur == ws) return std::nullopt;  // words must be whitespace-separated
        }
        auto end = match_word(text, cur, words[w]);
        if (!end) return std::nullopt;
        cur = *end;
    }
    return cur;
}

struct Candidate {
    size_t begin, end;
    const TermPattern* pattern;
};

}  // namespace

std::vector<TermPattern> generate_term_patterns(const std::string& element,
                                                const TermLexicon& lex) {
    const std::vector<Synonym>* synonyms = lex.find(element);
    if (!synonyms) throw std::runtime_error("unknown data element: " + element);
    std::vector<TermPattern> patterns;
    for (const Synonym& syn : *synonyms) {
        TermPattern p;
        p.element = element;
        p.synonym = syn;
        if (syn.kind == SynonymKind::phrase) {
            for (std::string& w : split_words(syn.text)) p.words.push_back(to_lower(w));
        }
        patterns.push_back(std::move(p));
    }
    return patterns;
}

std::vector<Mention> find_mentions(std::string_view text,
                                   const std::vector<TermPattern>& patterns) {
    std::vector<Candidate> candidates;
    std::string lowered = to_lower(text);

    for (const TermPattern& p : patterns) {
        if (p.synonym.kind == SynonymKind::acronym) {
            // exact, case-sensitive
            size_t pos = 0;
            while ((pos = text.find(p.synonym.text, pos)) != std::string_view::npos) {
                size_t end = pos + p.synonym.text.size();
                if (boundary_ok(text, pos, end)) candidates.push_back({pos, end, &p});
                pos++;
            }
        } else {
            if (p.words.empty()) continue;
            const std::string& first = p.words[0];
            size_t pos = 0;
            while ((pos = lowered.find(first, pos)) != std::string::npos) {
                auto end = match_phrase(text, pos, p.words);
                if (end && boundary_ok(text, pos, *end)) candidates.push_back({pos, *end, &p});
                pos++;
            }
        }
    }

    // leftmost-longest, non-overlapping
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.begin != b.begin) return a.begin < b.begin;
        return a.end > b.end;
    });

    std::vector<Mention> mentions;
    std::vector<Span> sentences = split_sentences(text);
    size_t last_end = 0;
    for (const Candidate& c : candidates) {
        if (c.begin < last_end && !mentions.empty()) continue;
        Mention m;
        m.element = c.pattern->element;
        m.surface = std::string(text.substr(c.begin, c.end - c.begin));
        m.span = {c.begin, c.end};
        m.synonym = c.pattern->synonym.text;
        auto enclosing = std::find_if(sentences.begin(), sentences.end(), [&](const Span& s) {
            return s.begin <= c.begin && c.begin < s.end;
        });
        if (enclosing != sentences.end()) {
            m.sentence = *enclosing;
        } else {
            m.sentence = {c.begin, c.end};  // degenerate text; sentence = the mention
        }
        m.sentence_text = std::string(text.substr(m.sentence.begin, m.sentence.length()));
        m.begin_in_sentence = c.begin - m.sentence.begin;
        mentions.push_back(std::move(m));
        last_end = c.end;
    }
    return mentions;
}

namespace {

constexpr size_t kScopeTokens = 6;  // ConText's conventional window

/// Post-coordinated negations; the trigger file carries only forward
/// triggers.
const char* kBackwardNegations[] = {"ruled out", "unlikely", "resolved"};

struct TriggerHit {
    size_t begin, end;
    TriggerCategory category;
    bool backward;
};

bool phrase_is_punctuation(const std::string& phrase) {
    return std::none_of(phrase.begin(), phrase.end(),
                        [](char c) { return is_word_char(c); });
}

/// Case-insensitive occurrences of a word-bounded phrase; punctuation
/// phrases (";") match as plain substrings.
void find_trigger(const std::string& lowered_sentence, const std::string& phrase,
                  TriggerCategory category, bool backward, std::vector<TriggerHit>& hits) {
    bool punct = phrase_is_punctuation(phrase);
    size_t pos = 0;
    while ((pos = lowered_sentence.find(phrase, pos)) != std::string::npos) {
        size_t end = pos + phrase.size();
        if (punct || boundary_ok(lowered_sentence, pos, end))
            hits.push_back({pos, end, category, backward});
        pos++;
    }
}

}  // namespace

AssertionStatus assert_status(const Mention& mention, const TriggerLexicon& triggers) {
    const std::string& sentence = mention.sentence_text;
    std::string lowered = to_lower(sentence);
    size_t mention_begin = mention.begin_in_sentence;
    size_t mention_end = mention_begin + mention.span.length();

    std::vector<TriggerHit> hits;
    for (const Trigger& t : triggers.triggers)
        find_trigger(lowered, t.phrase, t.category, false, hits);
    for (const char* phrase : kBackwardNegations)
        find_trigger(lowered, phrase, TriggerCategory::negation, true, hits);

    if (hits.empty()) return AssertionStatus::affirmed;

    std::vector<Span> tokens = word_tokens(sentence);
    std::vector<size_t> terminators;
    for (const TriggerHit& h : hits)
        if (h.category == TriggerCategory::scope_terminator) terminators.push_back(h.begin);

    AssertionStatus best = AssertionStatus::affirmed;
    for (const TriggerHit& h : hits) {
        if (h.category == TriggerCategory::scope_terminator) continue;
        // a trigger never claims a mention it overlaps
        if (h.begin < mention_end && mention_begin < h.end) continue;

        bool claims = false;
        if (!h.backward) {
            // forward scope: [trigger end, min(sentence end, 6 tokens, terminator))
            size_t scope_end = sentence.size();
            size_t n = 0;
            for (const Span& tok : tokens) {
                if (tok.begin < h.end) continue;
                if (++n == kScopeTokens) {
                    scope_end = tok.end;
                    break;
                }
            }
            for (size_t term : terminators)
                if (term >= h.end) scope_end = std::min(scope_end, term);
            claims = mention_begin >= h.end && mention_begin < scope_end;
        } else {
            // backward scope: 6 tokens before the trigger
            size_t scope_begin = 0;
            size_t n = 0;
            for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
                if (it->end > h.begin) continue;
                if (++n == kScopeTokens) {
                    scope_begin = it->begin;
                    break;
                }
            }
            for (size_t term : terminators)
                if (term < h.begin && term >= mention_end) scope_begin = std::max(scope_begin, term);
            claims = mention_end <= h.begin && mention_begin >= scope_begin;
        }
        if (!claims) continue;

        AssertionStatus status = AssertionStatus::affirmed;
        switch (h.category) {
            case TriggerCategory::negation: status = AssertionStatus::negated; break;
            case TriggerCategory::experiencer_other: status = AssertionStatus::family; break;
            case TriggerCategory::historical: status = AssertionStatus::historical; break;
            case TriggerCategory::hypothetical: status = AssertionStatus::hypothetical; break;
            case TriggerCategory::screening: status = AssertionStatus::screening; break;
            case TriggerCategory::scope_terminator: continue;
        }
        if (precedence(status) > precedence(best)) best = status;
    }
    return best;
}

PresenceFinding element_present(const PatientRecord& record, const std::string& element,
                                const std::set<ReportKind>& kinds, const TermLexicon& terms,
                                const TriggerLexicon& triggers) {
    PresenceFinding finding;
    finding.element = element;
    std::vector<TermPattern> patterns = generate_term_patterns(element, terms);

    bool any_affirmed_strong = false;
    bool any_affirmed = false;
    bool any_review = false;  // screening or hypothetical
    for (const Report& report : record.reports) {
        if (!kinds.count(report.kind) || report.text.empty()) continue;
        for (Mention& m : find_mentions(report.text, patterns)) {
            m.report_id = report.report_id;
            m.date = report.date;
            AssertionStatus status = assert_status(m, triggers);
            if (status == AssertionStatus::affirmed) {
                any_affirmed = true;
                if (!(element == "malignancy" && to_lower(m.synonym) == "cancer"))
                    any_affirmed_strong = true;
            } else if (status == AssertionStatus::screening ||
                       status == AssertionStatus::hypothetical) {
                any_review = true;
            }
            finding.supporting.emplace_back(std::move(m), status);
        }
    }

    finding.present = any_affirmed;
    // "cancer" alone cannot distinguish malignant from benign disease,
    // so presence resting on it alone is routed to review
    finding.ambiguous = (!any_affirmed && any_review) || (any_affirmed && !any_affirmed_strong);
    return finding;
}

}  // namespace trialscreen
