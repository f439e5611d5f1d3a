#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace uisdial::text {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// ASCII case-insensitive substring test. Non-ASCII bytes compare exactly.
bool contains_ci(std::string_view haystack, std::string_view needle);

// Like contains_ci, but the match must start and end at word boundaries.
bool contains_word_ci(std::string_view haystack, std::string_view needle);

// Lowercased word tokens; letters, digits and apostrophes form words,
// every other byte separates. Bytes >= 0x80 are kept inside words.
std::vector<std::string> word_tokens(std::string_view s);

// Whitespace-separated tokens, unnormalized.
std::vector<std::string> whitespace_tokens(std::string_view s);

bool ends_with_terminal_punctuation(std::string_view s);

// First sentence of an encyclopedia-style lead paragraph. Parenthetical
// asides are removed first; a terminal mark after a known abbreviation or a
// single-letter initial does not end the sentence.
std::string first_sentence(std::string_view paragraph);

// Lowercases the first character when it is an ASCII capital.
std::string decapitalize(std::string_view s);

}  // namespace uisdial::text
