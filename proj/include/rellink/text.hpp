#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace rellink::text {

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
inline bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
inline char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = lower(c);
  return out;
}

// Whitespace-delimited units; this is the token notion used for budgets.
inline std::size_t count_tokens(std::string_view s) {
  std::size_t n = 0;
  bool in_token = false;
  for (char c : s) {
    if (is_space(c)) {
      in_token = false;
    } else if (!in_token) {
      in_token = true;
      ++n;
    }
  }
  return n;
}

inline std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (is_space(c)) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// Lower-cased alphanumeric runs: "Where is the grave of X?" -> where is the grave of x
inline std::vector<std::string> word_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (is_alnum(c) || static_cast<unsigned char>(c) >= 0x80) {
      cur.push_back(lower(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

// Splits a relation label on camel-case boundaries and non-alphanumerics:
// "placeOfBurial" -> place of burial, "country_of_citizenship" -> country of citizenship
inline std::vector<std::string> label_tokens(std::string_view label) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
  };
  for (std::size_t i = 0; i < label.size(); ++i) {
    const char c = label[i];
    if (!is_alnum(c) && static_cast<unsigned char>(c) < 0x80) {
      flush();
      continue;
    }
    if (std::isupper(static_cast<unsigned char>(c)) && !cur.empty()) {
      const bool prev_lower = std::islower(static_cast<unsigned char>(label[i - 1])) ||
                              std::isdigit(static_cast<unsigned char>(label[i - 1]));
      const bool next_lower =
          i + 1 < label.size() && std::islower(static_cast<unsigned char>(label[i + 1]));
      // "birthPlace" splits before P; "URLName" splits before N
      if (prev_lower || (std::isupper(static_cast<unsigned char>(label[i - 1])) && next_lower)) {
        flush();
      }
    }
    cur.push_back(lower(c));
  }
  flush();
  return out;
}

// Lexicon key: case-folded with every non-alphanumeric dropped, so
// "almaMater", "alma mater" and "Alma_Mater" share one entry.
inline std::string normalize_label(std::string_view label) {
  std::string out;
  for (char c : label) {
    if (is_alnum(c) || static_cast<unsigned char>(c) >= 0x80) out.push_back(lower(c));
  }
  return out;
}

// Number of Unicode code points in a UTF-8 string.
inline std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

// Substring by code-point offsets [start, end). Returns npos-safe empty view
// when the range is outside the string.
inline std::string_view utf8_substr(std::string_view s, std::size_t start, std::size_t end) {
  std::size_t cp = 0;
  std::size_t begin_byte = std::string_view::npos;
  std::size_t end_byte = std::string_view::npos;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    const bool boundary = i == s.size() || (static_cast<unsigned char>(s[i]) & 0xC0) != 0x80;
    if (!boundary) continue;
    if (cp == start) begin_byte = i;
    if (cp == end) {
      end_byte = i;
      break;
    }
    ++cp;
  }
  if (begin_byte == std::string_view::npos || end_byte == std::string_view::npos ||
      end_byte < begin_byte) {
    return {};
  }
  return s.substr(begin_byte, end_byte - begin_byte);
}

}  // namespace rellink::text
