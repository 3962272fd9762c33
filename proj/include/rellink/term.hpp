#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rellink/error.hpp"

namespace rellink {

// Absolute IRI, either expanded ("http://dbpedia.org/ontology/state") or in
// compact prefixed form ("dbo:state"). Stored exactly as written.
class Iri {
 public:
  Iri() = default;
  explicit Iri(std::string value) : value_(std::move(value)) {
    if (!is_absolute(value_)) throw Error("not an absolute IRI: '" + value_ + "'");
  }

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  // scheme ":" rest, where scheme = ALPHA *( ALPHA / DIGIT / "+" / "-" / "." )
  static bool is_absolute(std::string_view s) {
    const auto colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == s.size()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (std::size_t i = 1; i < colon; ++i) {
      const char c = s[i];
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.' &&
          c != '_') {
        return false;
      }
    }
    return std::none_of(s.begin(), s.end(), [](char c) {
      return c == ' ' || c == '<' || c == '>' || c == '"' || c == '\n' || c == '\t';
    });
  }

  friend auto operator<=>(const Iri&, const Iri&) = default;
  friend bool operator==(const Iri&, const Iri&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Iri& iri) { return os << iri.value_; }

 private:
  std::string value_;
};

enum class TermKind : std::uint8_t { kIri, kBlank, kLiteral };

// A KB node. Literals keep their full N-Triples spelling (quotes, language
// tag, datatype) and compare by exact string equality.
struct Term {
  TermKind kind = TermKind::kIri;
  std::string value;

  static Term iri(std::string v) { return {TermKind::kIri, std::move(v)}; }
  static Term iri(const Iri& v) { return {TermKind::kIri, v.str()}; }
  static Term blank(std::string v) { return {TermKind::kBlank, std::move(v)}; }
  static Term literal(std::string v) { return {TermKind::kLiteral, std::move(v)}; }

  bool is_iri() const noexcept { return kind == TermKind::kIri; }

  // N-Triples spelling.
  std::string to_ntriples() const {
    switch (kind) {
      case TermKind::kIri: return "<" + value + ">";
      case TermKind::kBlank: return value;
      case TermKind::kLiteral: return value;
    }
    return value;
  }

  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << t.to_ntriples(); }

struct Triple {
  Term subject;
  Iri predicate;
  Term object;

  friend auto operator<=>(const Triple&, const Triple&) = default;
  friend bool operator==(const Triple&, const Triple&) = default;
};

// Prefix table: prefix name -> namespace base IRI.
class Namespaces {
 public:
  void add(std::string prefix, std::string base) {
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const auto& e) { return e.first == prefix; });
    if (it != entries_.end()) {
      it->second = std::move(base);
    } else {
      entries_.emplace_back(std::move(prefix), std::move(base));
    }
  }

  std::optional<std::string> base_of(std::string_view prefix) const {
    for (const auto& [p, b] : entries_) {
      if (p == prefix) return b;
    }
    return std::nullopt;
  }

  // (prefix, local name) if the IRI is in a known namespace, either written
  // compactly or expanded. Longest base wins, so ps: is not mistaken for p:.
  std::optional<std::pair<std::string, std::string>> split(std::string_view iri) const {
    const auto colon = iri.find(':');
    if (colon != std::string_view::npos) {
      const auto prefix = iri.substr(0, colon);
      const auto rest = iri.substr(colon + 1);
      if (rest.substr(0, 2) != "//") {
        for (const auto& [p, b] : entries_) {
          if (p == prefix) return std::pair{std::string(p), std::string(rest)};
        }
      }
    }
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& e : entries_) {
      if (iri.starts_with(e.second) && (!best || e.second.size() > best->second.size())) best = &e;
    }
    if (best) return std::pair{best->first, std::string(iri.substr(best->second.size()))};
    return std::nullopt;
  }

  std::optional<std::string> prefix_of(std::string_view iri) const {
    auto s = split(iri);
    if (!s) return std::nullopt;
    return s->first;
  }

  // Expanded form of a compact IRI; unknown prefixes are returned unchanged.
  std::string expand(std::string_view iri) const {
    auto s = split(iri);
    if (!s) return std::string(iri);
    return *base_of(s->first) + s->second;
  }

  // Local name: the part after the namespace, or after the last '/', '#' or ':'.
  std::string local_name(std::string_view iri) const {
    if (auto s = split(iri)) return s->second;
    const auto pos = iri.find_last_of("/#:");
    return std::string(pos == std::string_view::npos ? iri : iri.substr(pos + 1));
  }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

enum class ProfileKind { kDbpedia, kWikidata };

inline std::string to_string(ProfileKind k) {
  return k == ProfileKind::kDbpedia ? "dbpedia" : "wikidata";
}

inline ProfileKind parse_profile_kind(std::string_view s) {
  if (s == "dbpedia") return ProfileKind::kDbpedia;
  if (s == "wikidata") return ProfileKind::kWikidata;
  throw ConfigError("unknown profile '" + std::string(s) + "' (expected dbpedia or wikidata)");
}

// Per-KB conventions. The Wikidata role prefixes (wdt/p/ps/pq) are fixed
// names; their base IRIs come from the prefix table.
struct Profile {
  ProfileKind kind = ProfileKind::kDbpedia;
  Namespaces namespaces;
  // Namespaces a relation label may resolve into, in preference order.
  std::vector<std::string> relation_namespaces;
  std::string type_predicate;
  std::string subclass_predicate;
  // Wikidata properties attached only to entities ("instance of", "subclass of").
  std::vector<std::string> direct_only_properties;
  // Namespace pairs treated as interchangeable by relaxed evaluation.
  std::vector<std::pair<std::string, std::string>> equivalent_namespaces;

  bool is_wikidata() const noexcept { return kind == ProfileKind::kWikidata; }

  static Profile dbpedia() {
    Profile p;
    p.kind = ProfileKind::kDbpedia;
    p.namespaces.add("dbo", "http://dbpedia.org/ontology/");
    p.namespaces.add("dbp", "http://dbpedia.org/property/");
    p.namespaces.add("dbr", "http://dbpedia.org/resource/");
    p.namespaces.add("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
    p.namespaces.add("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
    p.namespaces.add("owl", "http://www.w3.org/2002/07/owl#");
    p.relation_namespaces = {"dbo", "dbp"};
    p.type_predicate = "rdf:type";
    p.subclass_predicate = "rdfs:subClassOf";
    p.equivalent_namespaces = {{"dbo", "dbp"}};
    return p;
  }

  static Profile wikidata() {
    Profile p;
    p.kind = ProfileKind::kWikidata;
    p.namespaces.add("wd", "http://www.wikidata.org/entity/");
    p.namespaces.add("wds", "http://www.wikidata.org/entity/statement/");
    p.namespaces.add("wdt", "http://www.wikidata.org/prop/direct/");
    p.namespaces.add("p", "http://www.wikidata.org/prop/");
    p.namespaces.add("ps", "http://www.wikidata.org/prop/statement/");
    p.namespaces.add("pq", "http://www.wikidata.org/prop/qualifier/");
    p.namespaces.add("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
    p.namespaces.add("rdfs", "http://www.w3.org/2000/01/rdf-schema#");
    p.relation_namespaces = {"wdt", "p", "ps", "pq"};
    p.type_predicate = "wdt:P31";
    p.subclass_predicate = "wdt:P279";
    p.direct_only_properties = {"P31", "P279"};
    return p;
  }

  static Profile for_kind(ProfileKind k) { return k == ProfileKind::kDbpedia ? dbpedia() : wikidata(); }

  // Position in relation_namespaces, or its size when not a relation namespace.
  std::size_t namespace_rank(std::string_view iri) const {
    const auto prefix = namespaces.prefix_of(iri);
    if (prefix) {
      for (std::size_t i = 0; i < relation_namespaces.size(); ++i) {
        if (relation_namespaces[i] == *prefix) return i;
      }
    }
    return relation_namespaces.size();
  }

  bool is_relation_namespace(std::string_view iri) const {
    return namespace_rank(iri) < relation_namespaces.size();
  }

  bool same_iri(std::string_view a, std::string_view b) const {
    return a == b || namespaces.expand(a) == namespaces.expand(b);
  }
};

}  // namespace rellink

template <>
struct std::hash<rellink::Term> {
  std::size_t operator()(const rellink::Term& t) const noexcept {
    return std::hash<std::string>{}(t.value) * 31 + static_cast<std::size_t>(t.kind);
  }
};
