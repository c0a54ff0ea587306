#include "trialscreen/text.hpp"

#include <cctype>

namespace trialscreen {

bool is_word_char(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_';
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::vector<Span> split_sentences(std::string_view text) {
    std::vector<Span> spans;
    size_t start = 0;
    auto flush = [&](size_t end) {
        size_t b = start, e = end;
        while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) b++;
        while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) e--;
        if (e > b) spans.push_back({b, e});
    };
    for (size_t i = 0; i < text.size(); i++) {
        char c = text[i];
        if (c == '\n' || c == '!' || c == '?') {
            flush(c == '\n' ? i : i + 1);
            start = i + 1;
        } else if (c == '.') {
            bool decimal = i > 0 && i + 1 < text.size() &&
                           std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
                           std::isdigit(static_cast<unsigned char>(text[i + 1]));
            if (!decimal) {
                flush(i + 1);
                start = i + 1;
            }
        }
    }
    flush(text.size());
    return spans;
}

std::vector<Span> word_tokens(std::string_view text) {
    std::vector<Span> tokens;
    size_t i = 0;
    while (i < text.size()) {
        if (is_word_char(text[i])) {
            size_t b = i;
            while (i < text.size() && is_word_char(text[i])) i++;
            tokens.push_back({b, i});
        } else {
            i++;
        }
    }
    return tokens;
}

}  // namespace trialscreen
