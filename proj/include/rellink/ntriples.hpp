#pragma once

#include <cctype>
#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "rellink/error.hpp"
#include "rellink/term.hpp"

namespace rellink::ntriples {

namespace detail {

inline void skip_ws(std::string_view line, std::size_t& pos) {
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
}

inline std::string read_iri(std::string_view line, std::size_t& pos, std::size_t lineno) {
  const auto close = line.find('>', pos + 1);
  if (close == std::string_view::npos) throw LoadError("unterminated IRI", lineno);
  std::string value(line.substr(pos + 1, close - pos - 1));
  if (!Iri::is_absolute(value)) throw LoadError("not an absolute IRI <" + value + ">", lineno);
  pos = close + 1;
  return value;
}

inline Term read_term(std::string_view line, std::size_t& pos, std::size_t lineno,
                      bool allow_literal) {
  skip_ws(line, pos);
  if (pos >= line.size()) throw LoadError("expected a term", lineno);
  const char c = line[pos];
  if (c == '<') return Term::iri(read_iri(line, pos, lineno));
  if (c == '_' && pos + 1 < line.size() && line[pos + 1] == ':') {
    const auto start = pos;
    pos += 2;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '.') ++pos;
    // a label may contain '.', but not as its last character
    while (pos < line.size() && line[pos] == '.' && pos + 1 < line.size() && line[pos + 1] != ' ' &&
           line[pos + 1] != '\t') {
      ++pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '.') ++pos;
    }
    if (pos == start + 2) throw LoadError("empty blank node label", lineno);
    return Term::blank(std::string(line.substr(start, pos - start)));
  }
  if (c == '"') {
    if (!allow_literal) throw LoadError("literal not allowed in this position", lineno);
    const auto start = pos++;
    bool closed = false;
    while (pos < line.size()) {
      if (line[pos] == '\\') {
        pos += 2;
        continue;
      }
      if (line[pos] == '"') {
        closed = true;
        ++pos;
        break;
      }
      ++pos;
    }
    if (!closed) throw LoadError("unterminated literal", lineno);
    if (pos < line.size() && line[pos] == '@') {
      ++pos;
      const auto tag = pos;
      while (pos < line.size() && (std::isalnum(static_cast<unsigned char>(line[pos])) || line[pos] == '-')) ++pos;
      if (pos == tag) throw LoadError("empty language tag", lineno);
    } else if (line.substr(pos, 2) == "^^") {
      pos += 2;
      if (pos >= line.size() || line[pos] != '<') throw LoadError("expected datatype IRI", lineno);
      read_iri(line, pos, lineno);
    }
    return Term::literal(std::string(line.substr(start, pos - start)));
  }
  throw LoadError(std::string("unexpected character '") + c + "'", lineno);
}

}  // namespace detail

// Parses one N-Triples line. Blank and comment-only lines yield nullopt.
inline std::optional<Triple> parse_line(std::string_view line, std::size_t lineno) {
  std::size_t pos = 0;
  detail::skip_ws(line, pos);
  if (pos >= line.size() || line[pos] == '#') return std::nullopt;

  Term subject = detail::read_term(line, pos, lineno, false);
  Term predicate = detail::read_term(line, pos, lineno, false);
  if (!predicate.is_iri()) throw LoadError("predicate must be an IRI", lineno);
  Term object = detail::read_term(line, pos, lineno, true);

  detail::skip_ws(line, pos);
  if (pos >= line.size() || line[pos] != '.') throw LoadError("missing terminal '.'", lineno);
  ++pos;
  detail::skip_ws(line, pos);
  if (pos < line.size() && line[pos] != '#') throw LoadError("trailing content after '.'", lineno);
  return Triple{std::move(subject), Iri(std::move(predicate.value)), std::move(object)};
}

// Calls sink(triple, lineno) for every triple in the stream.
template <typename Sink>
void parse(std::istream& in, Sink&& sink) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto t = parse_line(line, lineno)) sink(std::move(*t), lineno);
  }
}

}  // namespace rellink::ntriples
