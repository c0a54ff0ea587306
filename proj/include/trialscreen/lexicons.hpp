#ifndef TRIALSCREEN_LEXICONS_HPP
#define TRIALSCREEN_LEXICONS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace trialscreen {

/// Antihypertensive drug classes. Keys and member names are stored
/// lowercase; a drug name belongs to at most one class.
struct DrugLexicon {
    std::map<std::string, std::set<std::string>> class_members;
    std::map<std::string, std::string> drug_to_class;

    bool has_class(const std::string& name) const { return class_members.count(name) > 0; }
};

enum class SynonymKind { phrase, acronym };

struct Synonym {
    std::string text;
    SynonymKind kind = SynonymKind::phrase;
};

/// Data-element name -> synonym surface forms. Phrase forms match with
/// first-letter case-insensitivity per word; acronym forms match
/// case-sensitively.
struct TermLexicon {
    std::map<std::string, std::vector<Synonym>> elements;

    const std::vector<Synonym>* find(const std::string& element) const;
};

enum class TriggerCategory {
    negation,
    experiencer_other,
    historical,
    hypothetical,
    screening,
    scope_terminator,
};

const char* to_string(TriggerCategory cat);
std::optional<TriggerCategory> parse_trigger_category(std::string_view s);

struct Trigger {
    std::string phrase;  // stored lowercase
    TriggerCategory category = TriggerCategory::negation;
};

struct TriggerLexicon {
    std::vector<Trigger> triggers;
};

struct Lexicons {
    DrugLexicon drugs;
    TermLexicon terms;
    TriggerLexicon triggers;
};

/// Loads drugs.tsv, terms.tsv and triggers.tsv from a directory.
/// Lines are "class<TAB>drug", "element<TAB>synonym<TAB>phrase|acronym"
/// and "category<TAB>phrase"; '#' starts a comment. Invariant
/// violations (duplicate drug across classes, empty synonym, unknown
/// category) are fatal with file and line in the message.
Lexicons load_lexicons(const std::string& dir);

DrugLexicon load_drug_lexicon(const std::string& path);
TermLexicon load_term_lexicon(const std::string& path);
TriggerLexicon load_trigger_lexicon(const std::string& path);

struct DrugMatch {
    std::string class_name;
    std::string matched_name;  // the lexicon entry that matched
};

/// Class of a medication name, if any. Matching is case-insensitive;
/// trailing dose tokens ("25", "mg", "tablet") are trimmed. A
/// combination name ("Hydralazine/HCTZ") matches by exact lexicon
/// entry first, then by any '/'-separated component.
std::optional<std::string> classify_drug(std::string_view name, const DrugLexicon& lex);

/// classify_drug plus the lexicon entry the name resolved to.
std::optional<DrugMatch> match_drug(std::string_view name, const DrugLexicon& lex);

}  // namespace trialscreen

#endif
