#include "trialscreen/lexicons.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "trialscreen/text.hpp"

namespace trialscreen {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) b++;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) e--;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, tab - start)));
        start = tab + 1;
    }
    return fields;
}

[[noreturn]] void fail(const std::string& path, size_t line_no, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

/// Calls fn(fields, line_no) for every non-comment, non-blank line.
template <typename Fn>
void for_each_line(const std::string& path, Fn fn) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        fn(split_tabs(line), line_no);
    }
}

const std::set<std::string> kRequiredDrugClasses = {
    "beta_blocker",     "dihydropyridine", "nondihydropyridine",
    "antihypertensive_other", "ace_inhibitor",   "arb",
};

bool is_dose_token(const std::string& tok) {
    static const std::set<std::string> units = {
        "mg", "mcg", "g", "ml", "mg/ml", "units", "unit", "tablet", "tablets",
        "capsule", "capsules", "tab", "tabs", "cap", "caps", "er", "xl", "sr",
        "daily", "bid", "tid", "qd", "po", "oral", "%",
    };
    if (tok.empty()) return false;
    if (std::isdigit(static_cast<unsigned char>(tok[0]))) return true;  // "25", "3.125mg"
    return units.count(tok) > 0;
}

std::optional<DrugMatch> lookup_trimmed(const std::string& lowered, const DrugLexicon& lex) {
    auto it = lex.drug_to_class.find(lowered);
    if (it != lex.drug_to_class.end()) return DrugMatch{it->second, it->first};

    // strip trailing dose tokens one word at a time
    std::string name = lowered;
    while (true) {
        size_t sp = name.find_last_of(" \t");
        if (sp == std::string::npos) break;
        std::string last = name.substr(sp + 1);
        if (!is_dose_token(last)) break;
        name = trim(name.substr(0, sp));
        auto hit = lex.drug_to_class.find(name);
        if (hit != lex.drug_to_class.end()) return DrugMatch{hit->second, hit->first};
    }
    return std::nullopt;
}

}  // namespace

const char* to_string(TriggerCategory cat) {
    switch (cat) {
        case TriggerCategory::negation: return "negation";
        case TriggerCategory::experiencer_other: return "experiencer_other";
        case TriggerCategory::historical: return "historical";
        case TriggerCategory::hypothetical: return "hypothetical";
        case TriggerCategory::screening: return "screening";
        case TriggerCategory::scope_terminator: return "scope_terminator";
    }
    return "?";
}

std::optional<TriggerCategory> parse_trigger_category(std::string_view s) {
    if (s == "negation") return TriggerCategory::negation;
    if (s == "experiencer_other") return TriggerCategory::experiencer_other;
    if (s == "historical") return TriggerCategory::historical;
    if (s == "hypothetical") return TriggerCategory::hypothetical;
    if (s == "screening") return TriggerCategory::screening;
    if (s == "scope_terminator") return TriggerCategory::scope_terminator;
    return std::nullopt;
}

const std::vector<Synonym>* TermLexicon::find(const std::string& element) const {
    auto it = elements.find(element);
    return it == elements.end() ? nullptr : &it->second;
}

DrugLexicon load_drug_lexicon(const std::string& path) {
    DrugLexicon lex;
    for_each_line(path, [&](const std::vector<std::string>& fields, size_t line_no) {
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
            fail(path, line_no, "expected \"class<TAB>drug_name\"");
        std::string cls = to_lower(fields[0]);
        std::string drug = to_lower(fields[1]);
        auto [it, inserted] = lex.drug_to_class.emplace(drug, cls);
        if (!inserted && it->second != cls)
            fail(path, line_no, "drug \"" + drug + "\" assigned to both \"" + it->second +
                                    "\" and \"" + cls + "\"");
        lex.class_members[cls].insert(drug);
    });
    for (const std::string& cls : kRequiredDrugClasses) {
        if (!lex.has_class(cls))
            throw std::runtime_error(path + ": required drug class \"" + cls + "\" missing");
    }
    return lex;
}

TermLexicon load_term_lexicon(const std::string& path) {
    TermLexicon lex;
    for_each_line(path, [&](const std::vector<std::string>& fields, size_t line_no) {
        if (fields.size() != 3 || fields[0].empty())
            fail(path, line_no, "expected \"element<TAB>synonym<TAB>phrase|acronym\"");
        if (fields[1].empty()) fail(path, line_no, "empty synonym");
        SynonymKind kind;
        if (fields[2] == "phrase")
            kind = SynonymKind::phrase;
        else if (fields[2] == "acronym")
            kind = SynonymKind::acronym;
        else
            fail(path, line_no, "synonym kind must be \"phrase\" or \"acronym\"");
        lex.elements[fields[0]].push_back({fields[1], kind});
    });
    for (const auto& [element, synonyms] : lex.elements) {
        if (synonyms.empty())
            throw std::runtime_error(path + ": element \"" + element + "\" has no synonyms");
    }
    return lex;
}

TriggerLexicon load_trigger_lexicon(const std::string& path) {
    TriggerLexicon lex;
    for_each_line(path, [&](const std::vector<std::string>& fields, size_t line_no) {
        if (fields.size() != 2 || fields[1].empty())
            fail(path, line_no, "expected \"category<TAB>phrase\"");
        auto cat = parse_trigger_category(fields[0]);
        if (!cat) fail(path, line_no, "unknown trigger category \"" + fields[0] + "\"");
        lex.triggers.push_back({to_lower(fields[1]), *cat});
    });
    return lex;
}

Lexicons load_lexicons(const std::string& dir) {
    Lexicons lex;
    lex.drugs = load_drug_lexicon(dir + "/drugs.tsv");
    lex.terms = load_term_lexicon(dir + "/terms.tsv");
    lex.triggers = load_trigger_lexicon(dir + "/triggers.tsv");
    return lex;
}

std::optional<DrugMatch> match_drug(std::string_view name, const DrugLexicon& lex) {
    std::string lowered = to_lower(trim(name));
    if (lowered.empty()) return std::nullopt;

    if (auto m = lookup_trimmed(lowered, lex)) return m;

    // combination names: try each '/'-separated component
    if (lowered.find('/') != std::string::npos) {
        std::stringstream ss(lowered);
        std::string part;
        while (std::getline(ss, part, '/')) {
            part = trim(part);
            if (part.empty()) continue;
            if (auto m = lookup_trimmed(part, lex)) return m;
        }
    }
    return std::nullopt;
}

std::optional<std::string> classify_drug(std::string_view name, const DrugLexicon& lex) {
    auto m = match_drug(name, lex);
    if (!m) return std::nullopt;
    return m->class_name;
}

}  // namespace trialscreen
