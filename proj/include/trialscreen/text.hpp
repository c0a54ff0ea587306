#ifndef TRIALSCREEN_TEXT_HPP
#define TRIALSCREEN_TEXT_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace trialscreen {

/// Half-open character range [begin, end) into some text.
struct Span {
    size_t begin = 0;
    size_t end = 0;

    bool operator==(const Span&) const = default;
    size_t length() const { return end - begin; }
};

bool is_word_char(char c);

std::string to_lower(std::string_view s);

/// Splits report text into sentences. Sentences end at '.', '!', '?'
/// or a newline; a '.' between two digits is a decimal point and does
/// not end the sentence. Spans exclude leading/trailing whitespace;
/// empty spans are dropped.
std::vector<Span> split_sentences(std::string_view text);

/// Positions of word tokens (maximal runs of word characters).
std::vector<Span> word_tokens(std::string_view text);

}  // namespace trialscreen

#endif
