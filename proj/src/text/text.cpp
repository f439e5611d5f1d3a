#include "uisdial/text/text.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace uisdial::text {

namespace {

bool is_word_byte(unsigned char c) {
  return std::isalnum(c) || c == '\'' || c >= 0x80;
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

constexpr std::array<std::string_view, 14> kAbbreviations = {
    "mr", "mrs", "ms", "dr", "jr", "sr", "st", "vs", "etc", "inc", "ltd", "co", "no", "mt"};

bool is_abbreviation(std::string_view word) {
  if (word.size() == 1 && std::isupper(static_cast<unsigned char>(word[0]))) return true;
  const std::string lower = to_lower(word);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) != kAbbreviations.end();
}

std::string strip_parentheticals(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  int depth = 0;
  for (char c : s) {
    if (c == '(') {
      ++depth;
    } else if (c == ')' && depth > 0) {
      --depth;
    } else if (depth == 0) {
      out.push_back(c);
    }
  }
  return out;
}

std::string collapse_spaces(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = true;
      continue;
    }
    // Drop the space left in front of punctuation by a removed aside.
    if (pending_space && !out.empty() && c != ',' && c != '.' && c != ';' && c != ':' &&
        c != '!' && c != '?') {
      out.push_back(' ');
    }
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trim(std::string_view s) {
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  std::size_t end = s.size();
  while (end > start && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(start, end - start));
}

bool contains_ci(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  return to_lower(haystack).find(to_lower(needle)) != std::string::npos;
}

bool contains_word_ci(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return false;
  const std::string h = to_lower(haystack);
  const std::string n = to_lower(needle);
  for (std::size_t pos = h.find(n); pos != std::string::npos; pos = h.find(n, pos + 1)) {
    const bool left_ok = pos == 0 || !is_word_byte(static_cast<unsigned char>(h[pos - 1]));
    const std::size_t end = pos + n.size();
    const bool right_ok = end >= h.size() || !is_word_byte(static_cast<unsigned char>(h[end]));
    if (left_ok && right_ok) return true;
  }
  return false;
}

std::vector<std::string> word_tokens(std::string_view s) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : s) {
    const auto uc = static_cast<unsigned char>(c);
    if (is_word_byte(uc)) {
      current.push_back(static_cast<char>(std::tolower(uc)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> whitespace_tokens(std::string_view s) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

bool ends_with_terminal_punctuation(std::string_view s) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char last = t.back();
  // Allow a closing quote after the mark: ... "Star Wars."
  if ((last == '"' || last == '\'') && t.size() >= 2) last = t[t.size() - 2];
  return is_terminal(last);
}

std::string first_sentence(std::string_view paragraph) {
  const std::string s = collapse_spaces(strip_parentheticals(paragraph));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!is_terminal(s[i])) continue;
    std::size_t next = i + 1;
    while (next < s.size() && is_terminal(s[next])) ++next;
    if (next < s.size() && !std::isspace(static_cast<unsigned char>(s[next]))) continue;
    std::size_t word_start = i;
    while (word_start > 0 && std::isalpha(static_cast<unsigned char>(s[word_start - 1]))) {
      --word_start;
    }
    const std::string_view word(s.data() + word_start, i - word_start);
    if (s[i] == '.' && is_abbreviation(word)) continue;
    std::size_t after = next;
    while (after < s.size() && std::isspace(static_cast<unsigned char>(s[after]))) ++after;
    if (after < s.size() && std::islower(static_cast<unsigned char>(s[after]))) continue;
    return trim(std::string_view(s).substr(0, next));
  }
  return trim(s);
}

std::string decapitalize(std::string_view s) {
  std::string out(s);
  if (!out.empty() && std::isupper(static_cast<unsigned char>(out[0]))) {
    out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
  }
  return out;
}

}  // namespace uisdial::text
