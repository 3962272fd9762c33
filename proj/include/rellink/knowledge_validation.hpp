#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rellink/kb_store.hpp"
#include "rellink/sequence_grammar.hpp"
#include "rellink/text.hpp"

namespace rellink {

// A conjunction of patterns sharing ?x (and ?y for placeholders), one per
// validation unit (normally one per argument-relation pair).
struct CandidateGraph {
  std::vector<TriplePattern> patterns;
  std::size_t beam_rank = 0;
  // Per unit: index of the chosen pattern in its unpruned expansion.
  std::vector<std::size_t> choices;
};

struct LinkingResult {
  std::vector<Iri> relations;
  std::vector<std::string> labels;  // relation labels of the source beam
  bool validated = false;
  std::size_t source_rank = 0;
  std::optional<bool> ask_answer;
  std::optional<CandidateGraph> graph;
};

struct LinkConfig {
  std::size_t beam_n = 50;
  std::size_t ask_n = 10;
  GrammarOptions grammar;
};

// Patterns connecting `a` and `b` through the relation label, both
// orientations, over every namespace variant the label resolves to.
//   DBpedia: (a r b), (b r a) for each dbo:/dbp: variant.
//   Wikidata: direct wdt: first, then the p:/ps: statement route and the pq:
//   qualifier route, except for direct-only properties (P31, P279).
inline std::vector<TriplePattern> expand_relation(const KbStore& store, std::string_view label,
                                                  const PatternTerm& a, const PatternTerm& b) {
  const auto& profile = store.profile();
  std::vector<Iri> uris;
  for (auto& iri : store.lookup_relation_label(label)) {
    if (profile.is_relation_namespace(iri.str())) uris.push_back(std::move(iri));
  }
  std::vector<TriplePattern> out;
  auto both = [&](const Iri& pred, Route route, std::optional<Iri> entry) {
    out.push_back({a, pred, b, route, entry});
    out.push_back({b, pred, a, route, entry});
  };

  if (!profile.is_wikidata()) {
    for (const auto& r : uris) both(r, Route::kDirect, std::nullopt);
    return out;
  }

  const auto& ns = profile.namespaces;
  std::vector<std::string> keys;
  std::map<std::string, std::map<std::string, Iri>> variants;  // property -> prefix -> iri
  for (const auto& r : uris) {
    auto split = ns.split(r.str());
    if (!split) continue;
    if (!variants.count(split->second)) keys.push_back(split->second);
    variants[split->second].emplace(split->first, r);
  }
  for (const auto& key : keys) {
    const auto& v = variants[key];
    if (auto it = v.find("wdt"); it != v.end()) both(it->second, Route::kDirect, std::nullopt);
    const bool direct_only = std::find(profile.direct_only_properties.begin(),
                                       profile.direct_only_properties.end(),
                                       key) != profile.direct_only_properties.end();
    if (direct_only) continue;
    auto entry = v.find("p");
    auto value = v.find("ps");
    if (entry != v.end() && value != v.end()) both(value->second, Route::kStatement, entry->second);
    if (auto it = v.find("pq"); it != v.end()) both(it->second, Route::kQualifier, std::nullopt);
  }
  return out;
}

// (e r ?x) / (?x r e) per variant; empty when the argument is unresolved or
// the label maps to no relation.
inline std::vector<TriplePattern> expand_entity_relation(const KbStore& store, const ArgRelPair& pair) {
  const auto* arg = std::get_if<EntityArg>(&pair.argument);
  if (!arg || !arg->entity) return {};
  return expand_relation(store, pair.relation_label, PatternTerm::iri(*arg->entity),
                         PatternTerm::var(Variable::kX));
}

// (?y r ?x) / (?x r ?y) per variant.
inline std::vector<TriplePattern> expand_placeholder_relation(const KbStore& store, const ArgRelPair& pair) {
  return expand_relation(store, pair.relation_label, PatternTerm::var(Variable::kY),
                         PatternTerm::var(Variable::kX));
}

inline std::vector<TriplePattern> expand_pair(const KbStore& store, const ArgRelPair& pair) {
  return pair.is_placeholder() ? expand_placeholder_relation(store, pair)
                               : expand_entity_relation(store, pair);
}

// Streams the cartesian product of per-unit pattern lists in lexicographic
// order of choice indices (last unit varies fastest). Patterns that are not
// satisfiable on their own are pruned first; a unit left empty makes the
// stream empty.
class GraphEnumerator {
 public:
  GraphEnumerator(const KbStore& store, const std::vector<std::vector<TriplePattern>>& units,
                  std::size_t beam_rank = 0, bool prune = true)
      : beam_rank_(beam_rank) {
    for (const auto& unit : units) {
      std::vector<std::pair<std::size_t, TriplePattern>> kept;
      for (std::size_t i = 0; i < unit.size(); ++i) {
        if (!prune || store.satisfiable(unit[i])) kept.emplace_back(i, unit[i]);
      }
      if (kept.empty()) exhausted_ = true;
      surviving_.push_back(std::move(kept));
    }
    if (surviving_.empty()) exhausted_ = true;
    cursor_.assign(surviving_.size(), 0);
  }

  std::optional<CandidateGraph> next() {
    if (exhausted_) return std::nullopt;
    CandidateGraph g;
    g.beam_rank = beam_rank_;
    for (std::size_t u = 0; u < surviving_.size(); ++u) {
      const auto& [index, pattern] = surviving_[u][cursor_[u]];
      g.patterns.push_back(pattern);
      g.choices.push_back(index);
    }
    advance();
    return g;
  }

  // Product size of the surviving lists (the number of graphs next() yields).
  std::size_t size() const {
    if (surviving_.empty()) return 0;
    std::size_t n = 1;
    for (const auto& s : surviving_) n *= s.size();
    return n;
  }

  const std::vector<std::vector<std::pair<std::size_t, TriplePattern>>>& surviving() const {
    return surviving_;
  }

 private:
  void advance() {
    std::size_t pos = cursor_.size();
    while (pos > 0) {
      --pos;
      if (++cursor_[pos] < surviving_[pos].size()) return;
      cursor_[pos] = 0;
    }
    exhausted_ = true;
  }

  std::size_t beam_rank_;
  std::vector<std::vector<std::pair<std::size_t, TriplePattern>>> surviving_;
  std::vector<std::size_t> cursor_;
  bool exhausted_ = false;
};

inline GraphEnumerator enumerate_graphs(const KbStore& store, const std::vector<ArgRelPair>& pairs,
                                        std::size_t beam_rank = 0) {
  std::vector<std::vector<TriplePattern>> units;
  for (const auto& pair : pairs) units.push_back(expand_pair(store, pair));
  return GraphEnumerator(store, units, beam_rank);
}

namespace detail {

template <typename T>
void push_unique(std::vector<T>& v, T value) {
  if (std::find(v.begin(), v.end(), value) == v.end()) v.push_back(std::move(value));
}

inline bool all_resolved(const std::vector<ArgRelPair>& pairs) {
  return std::all_of(pairs.begin(), pairs.end(), [](const ArgRelPair& p) {
    const auto* e = std::get_if<EntityArg>(&p.argument);
    return !e || e->entity.has_value();
  });
}

inline std::vector<std::string> pair_labels(const std::vector<ArgRelPair>& pairs) {
  std::vector<std::string> labels;
  for (const auto& p : pairs) push_unique(labels, p.relation_label);
  return labels;
}

inline std::size_t rank_of(const OutputSequence& seq, std::size_t index) {
  return seq.rank ? seq.rank : index + 1;
}

inline std::optional<std::vector<ArgRelPair>> try_parse(const OutputSequence& seq,
                                                        const std::vector<LinkedEntity>& entities,
                                                        const GrammarOptions& grammar) {
  try {
    return parse_output(seq.text, entities, grammar);
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

// First matching graph over the units, as a validated result.
inline std::optional<LinkingResult> first_match(const KbStore& store,
                                                const std::vector<std::vector<TriplePattern>>& units,
                                                std::size_t rank) {
  GraphEnumerator graphs(store, units, rank);
  while (auto g = graphs.next()) {
    if (store.match_graph(g->patterns)) {
      LinkingResult result;
      for (const auto& p : g->patterns) push_unique(result.relations, p.predicate);
      result.validated = true;
      result.source_rank = rank;
      result.graph = std::move(*g);
      return result;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Validates one beam: parse, resolve arguments, then scan candidate graphs
// and stop at the first one matched in the KB.
inline std::optional<LinkingResult> validate_sequence(const KbStore& store, const OutputSequence& seq,
                                                      const std::vector<LinkedEntity>& entities,
                                                      const GrammarOptions& grammar = {}) {
  auto pairs = detail::try_parse(seq, entities, grammar);
  if (!pairs || !detail::all_resolved(*pairs)) return std::nullopt;
  std::vector<std::vector<TriplePattern>> units;
  for (const auto& pair : *pairs) units.push_back(expand_pair(store, pair));
  auto result = detail::first_match(store, units, detail::rank_of(seq, 0));
  if (result) result->labels = detail::pair_labels(*pairs);
  return result;
}

// Label -> URI without validation, taking the preferred namespace variant
// (dbo: before dbp:, wdt: before p:/ps:/pq:).
inline std::vector<Iri> best_effort_relations(const KbStore& store, const std::vector<ArgRelPair>& pairs) {
  std::vector<Iri> out;
  for (const auto& pair : pairs) {
    for (const auto& iri : store.lookup_relation_label(pair.relation_label)) {
      if (store.profile().is_relation_namespace(iri.str())) {
        detail::push_unique(out, iri);
        break;
      }
    }
  }
  return out;
}

// Unvalidated result from the highest-ranked beam that parses.
inline LinkingResult fallback_result(const KbStore& store, const std::vector<OutputSequence>& beams,
                                     const std::vector<LinkedEntity>& entities,
                                     const GrammarOptions& grammar) {
  LinkingResult result;
  for (std::size_t i = 0; i < beams.size(); ++i) {
    if (auto pairs = detail::try_parse(beams[i], entities, grammar)) {
      result.relations = best_effort_relations(store, *pairs);
      result.labels = detail::pair_labels(*pairs);
      result.source_rank = detail::rank_of(beams[i], i);
      break;
    }
  }
  return result;
}

// ASK validation units: within a relation-label group, the first two entity
// arguments become one fully bound unit (E1 r E2)/(E2 r E1); remaining pairs
// expand as usual. nullopt when the beam has no bound unit.
inline std::optional<std::vector<std::vector<TriplePattern>>> ask_units(const KbStore& store,
                                                                        const std::vector<ArgRelPair>& pairs) {
  std::vector<std::vector<TriplePattern>> units;
  std::vector<bool> used(pairs.size(), false);
  bool bound = false;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (used[i]) continue;
    const auto* first = std::get_if<EntityArg>(&pairs[i].argument);
    if (first && first->entity) {
      const auto key = text::normalize_label(pairs[i].relation_label);
      for (std::size_t j = i + 1; j < pairs.size(); ++j) {
        const auto* second = std::get_if<EntityArg>(&pairs[j].argument);
        if (used[j] || !second || !second->entity) continue;
        if (text::normalize_label(pairs[j].relation_label) != key) continue;
        used[i] = used[j] = true;
        bound = true;
        units.push_back(expand_relation(store, pairs[i].relation_label, PatternTerm::iri(*first->entity),
                                        PatternTerm::iri(*second->entity)));
        break;
      }
    }
    if (!used[i]) {
      used[i] = true;
      units.push_back(expand_pair(store, pairs[i]));
    }
  }
  if (!bound) return std::nullopt;
  return units;
}

// Scans beams in rank order and returns the first validated one. Yes/no
// questions instead require a fully bound triple within the top ask_n beams;
// otherwise they fall back to the top beam with a negative answer.
inline LinkingResult link(const KbStore& store, std::string_view question,
                          const std::vector<OutputSequence>& beams,
                          const std::vector<LinkedEntity>& entities, const LinkConfig& config = {}) {
  if (beams.empty()) return {};

  if (detect_ask(question)) {
    const std::size_t limit = std::min(config.ask_n, beams.size());
    for (std::size_t i = 0; i < limit; ++i) {
      auto pairs = detail::try_parse(beams[i], entities, config.grammar);
      if (!pairs || !detail::all_resolved(*pairs)) continue;
      auto units = ask_units(store, *pairs);
      if (!units) continue;
      if (auto result = detail::first_match(store, *units, detail::rank_of(beams[i], i))) {
        result->labels = detail::pair_labels(*pairs);
        result->ask_answer = true;
        return *result;
      }
    }
    auto result = fallback_result(store, beams, entities, config.grammar);
    result.ask_answer = false;
    return result;
  }

  const std::size_t limit = std::min(config.beam_n, beams.size());
  for (std::size_t i = 0; i < limit; ++i) {
    OutputSequence seq = beams[i];
    seq.rank = detail::rank_of(beams[i], i);
    if (auto result = validate_sequence(store, seq, entities, config.grammar)) return *result;
  }
  return fallback_result(store, beams, entities, config.grammar);
}

}  // namespace rellink
