#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rellink/error.hpp"
#include "rellink/term.hpp"
#include "rellink/text.hpp"

namespace rellink {

// Characters with structural meaning inside "[a | b, c]" groups.
inline bool is_structural(char c) {
  return c == '[' || c == ']' || c == '|' || c == ',' || c == '\\';
}

inline std::string escape_field(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (is_structural(c)) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline std::string unescape_field(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    out.push_back(s[i]);
  }
  return out;
}

// Splits at unescaped occurrences of sep; fields keep their escapes.
inline std::vector<std::string> split_unescaped(std::string_view s, char sep) {
  std::vector<std::string> out(1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      out.back().push_back(s[i]);
      out.back().push_back(s[++i]);
    } else if (s[i] == sep) {
      out.emplace_back();
    } else {
      out.back().push_back(s[i]);
    }
  }
  return out;
}

// Raw (still escaped) contents of each top-level "[...]" group. Groups may be
// separated by commas and/or whitespace; anything else is an error.
inline std::vector<std::string> bracket_groups(std::string_view s) {
  std::vector<std::string> groups;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (text::is_space(c) || c == ',') {
      ++i;
      continue;
    }
    if (c != '[') throw ParseError("text outside brackets", std::string(s.substr(i)));
    const std::size_t start = ++i;
    bool closed = false;
    while (i < s.size()) {
      if (s[i] == '\\' && i + 1 < s.size()) {
        i += 2;
        continue;
      }
      if (s[i] == '[') throw ParseError("nested '['", std::string(s.substr(start - 1)));
      if (s[i] == ']') {
        closed = true;
        break;
      }
      ++i;
    }
    if (!closed) throw ParseError("unbalanced brackets", std::string(s.substr(start - 1)));
    groups.emplace_back(s.substr(start, i - start));
    ++i;
  }
  return groups;
}

// A question-entity argument. entity is set once the mention has been
// matched to a linked entity; fuzzy marks a token-overlap match.
struct EntityArg {
  std::string mention;
  std::optional<Iri> entity;
  bool fuzzy = false;
  friend bool operator==(const EntityArg&, const EntityArg&) = default;
};

// A Wh term standing in for an unknown (?y).
struct PlaceholderArg {
  std::string wh_term;
  friend bool operator==(const PlaceholderArg&, const PlaceholderArg&) = default;
};

using Argument = std::variant<EntityArg, PlaceholderArg>;

struct ArgRelPair {
  Argument argument;
  std::string relation_label;

  bool is_placeholder() const { return std::holds_alternative<PlaceholderArg>(argument); }
  const std::string& argument_text() const {
    return is_placeholder() ? std::get<PlaceholderArg>(argument).wh_term
                            : std::get<EntityArg>(argument).mention;
  }

  friend bool operator==(const ArgRelPair&, const ArgRelPair&) = default;
};

// One generator beam. text is kept verbatim even when it does not parse.
struct OutputSequence {
  std::string text;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based
  friend bool operator==(const OutputSequence&, const OutputSequence&) = default;
};

struct LinkedEntity {
  std::string mention;
  std::size_t start = 0;
  std::size_t end = 0;
  Iri entity;
  friend bool operator==(const LinkedEntity&, const LinkedEntity&) = default;
};

inline std::set<std::string> default_wh_lexicon() {
  return {"who", "what", "where", "when", "which", "whom", "whose", "how"};
}

struct GrammarOptions {
  std::set<std::string> wh_lexicon = default_wh_lexicon();
  // Share of argument tokens that must occur in a linked mention for a fuzzy match.
  double fuzzy_threshold = 0.5;
};

inline std::string serialize_target(const std::vector<ArgRelPair>& pairs) {
  if (pairs.empty()) throw SerializationError("cannot serialize an empty pair list");
  std::string out;
  for (const auto& pair : pairs) {
    if (!out.empty()) out += ", ";
    out += "[" + escape_field(pair.argument_text()) + " | " + escape_field(pair.relation_label) + "]";
  }
  return out;
}

inline void resolve_mention(EntityArg& arg, const std::vector<LinkedEntity>& entities,
                            double fuzzy_threshold) {
  for (const auto& e : entities) {
    if (e.mention == arg.mention) {
      arg.entity = e.entity;
      return;
    }
  }
  const auto folded = text::to_lower(arg.mention);
  for (const auto& e : entities) {
    if (text::to_lower(e.mention) == folded) {
      arg.entity = e.entity;
      return;
    }
  }
  const auto tokens = text::word_tokens(arg.mention);
  if (tokens.empty()) return;
  double best = 0.0;
  const LinkedEntity* best_entity = nullptr;
  for (const auto& e : entities) {
    const auto mention_tokens = text::word_tokens(e.mention);
    const std::set<std::string> vocab(mention_tokens.begin(), mention_tokens.end());
    const auto hits = std::count_if(tokens.begin(), tokens.end(),
                                    [&](const std::string& t) { return vocab.count(t) > 0; });
    const double ratio = static_cast<double>(hits) / static_cast<double>(tokens.size());
    if (ratio > best) {
      best = ratio;
      best_entity = &e;
    }
  }
  if (best_entity && best >= fuzzy_threshold) {
    arg.entity = best_entity->entity;
    arg.fuzzy = true;
  }
}

// Parses "[Arg1 | Rel1], ..., [ArgN | RelN]". A group without '|' may use
// " - " as its separator. Entity arguments are matched against the linked
// entities: exact, then case-insensitive, then by token overlap.
inline std::vector<ArgRelPair> parse_output(std::string_view output,
                                            const std::vector<LinkedEntity>& entities = {},
                                            const GrammarOptions& options = {}) {
  const auto groups = bracket_groups(output);
  if (groups.empty()) throw ParseError("no argument-relation pairs", std::string(output));
  std::vector<ArgRelPair> pairs;
  pairs.reserve(groups.size());
  for (const auto& group : groups) {
    auto fields = split_unescaped(group, '|');
    if (fields.size() == 1) {
      const auto dash = group.rfind(" - ");
      if (dash == std::string::npos) throw ParseError("missing '|'", group);
      fields = {group.substr(0, dash), group.substr(dash + 3)};
    }
    if (fields.size() != 2) throw ParseError("more than one '|'", group);
    const auto arg = unescape_field(text::trim(fields[0]));
    const auto rel = unescape_field(text::trim(fields[1]));
    if (arg.empty()) throw ParseError("empty argument", group);
    if (rel.empty()) throw ParseError("empty relation label", group);

    ArgRelPair pair;
    pair.relation_label = rel;
    if (options.wh_lexicon.count(text::to_lower(arg))) {
      pair.argument = PlaceholderArg{arg};
    } else {
      EntityArg entity{arg, std::nullopt, false};
      resolve_mention(entity, entities, options.fuzzy_threshold);
      pair.argument = std::move(entity);
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

// Yes/no questions start with an auxiliary verb.
inline bool detect_ask(std::string_view question) {
  static const std::set<std::string> auxiliaries{"is",   "was", "are", "were", "do", "does",
                                                 "did",  "has", "have", "had", "can"};
  const auto tokens = text::word_tokens(question);
  return !tokens.empty() && auxiliaries.count(tokens.front()) > 0;
}

}  // namespace rellink
