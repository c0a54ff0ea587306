#ifndef TRIALSCREEN_TERM_CLASSIFIER_HPP
#define TRIALSCREEN_TERM_CLASSIFIER_HPP

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "trialscreen/lexicons.hpp"
#include "trialscreen/record_model.hpp"
#include "trialscreen/text.hpp"

namespace trialscreen {

enum class AssertionStatus { affirmed, negated, family, historical, hypothetical, screening };

const char* to_string(AssertionStatus status);

/// Precedence when several triggers scope one mention:
/// negated > family > screening > hypothetical > historical > affirmed.
int precedence(AssertionStatus status);

struct Mention {
    std::string element;
    std::string surface;      // text at span
    Span span;                // offsets into the report text
    Span sentence;            // enclosing sentence, offsets into the report text
    std::string sentence_text;
    size_t begin_in_sentence = 0;  // span.begin - sentence.begin
    std::string synonym;      // lexicon synonym that matched
    std::string report_id;
    std::optional<Date> date;
};

/// Compiled matcher for one synonym. Phrase synonyms match each word
/// with first-letter case-insensitivity (rest of the word as written
/// in the lexicon), words joined by flexible whitespace; acronyms
/// match case-sensitively. Matches are bounded by non-word characters
/// or string edges.
struct TermPattern {
    std::string element;
    Synonym synonym;
    std::vector<std::string> words;  // phrase words, lowercase
};

/// One pattern per synonym of the element. Throws when the element is
/// not in the lexicon.
std::vector<TermPattern> generate_term_patterns(const std::string& element,
                                                const TermLexicon& lex);

/// All non-overlapping matches, leftmost-longest, in text order.
/// Mentions carry their enclosing sentence.
std::vector<Mention> find_mentions(std::string_view text,
                                   const std::vector<TermPattern>& patterns);

/// ConText-style assertion: forward triggers claim a mention that
/// begins within their scope (trigger end to the earliest of sentence
/// end, six tokens, next scope terminator); a small built-in backward
/// list handles post-coordinated negations ("... was ruled out").
/// Highest-precedence claiming category wins; no trigger -> affirmed.
AssertionStatus assert_status(const Mention& mention, const TriggerLexicon& triggers);

struct PresenceFinding {
    std::string element;
    bool present = false;    // at least one affirmed mention
    bool ambiguous = false;  // needs human review (see notes below)
    std::vector<std::pair<Mention, AssertionStatus>> supporting;
};

/// Aggregates mentions over all reports of the requested kinds.
/// present = any affirmed mention; ambiguous = no affirmed mention but
/// a screening/hypothetical one exists, or (for malignancy) presence
/// is established only via the weak synonym "cancer".
PresenceFinding element_present(const PatientRecord& record, const std::string& element,
                                const std::set<ReportKind>& kinds, const TermLexicon& terms,
                                const TriggerLexicon& triggers);

}  // namespace trialscreen

#endif
