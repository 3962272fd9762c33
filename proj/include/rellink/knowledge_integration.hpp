#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rellink/error.hpp"
#include "rellink/kb_store.hpp"
#include "rellink/sequence_grammar.hpp"
#include "rellink/similarity.hpp"
#include "rellink/text.hpp"

namespace rellink {

// "[mention | type | rel1, rel2, ...]" for one linked entity.
struct EntityStructure {
  std::string mention;
  std::optional<std::string> type_label;
  std::vector<std::string> relations;  // ranked, unique
  friend bool operator==(const EntityStructure&, const EntityStructure&) = default;
};

struct EncoderInput {
  std::string question;
  std::vector<EntityStructure> structures;
  std::string rendered;
  std::size_t budget = 512;
};

inline constexpr std::size_t kDefaultBudget = 512;
inline constexpr std::size_t kUnlimitedRelations = std::numeric_limits<std::size_t>::max();

// Always three fields; a missing type renders as an empty middle field so the
// rendering stays unambiguous.
inline std::string render_structure(const EntityStructure& s) {
  std::string out = "[" + escape_field(s.mention) + " | " + escape_field(s.type_label.value_or("")) + " |";
  for (std::size_t i = 0; i < s.relations.size(); ++i) {
    out += (i == 0 ? " " : ", ") + escape_field(s.relations[i]);
  }
  out += "]";
  return out;
}

inline std::string render_input(std::string_view question, const std::vector<EntityStructure>& structures) {
  std::string out(question);
  for (const auto& s : structures) out += " " + render_structure(s);
  return out;
}

// Inverse of render_structure over a run of rendered structures.
inline std::vector<EntityStructure> parse_structures(std::string_view rendered_region) {
  std::vector<EntityStructure> out;
  for (const auto& group : bracket_groups(rendered_region)) {
    const auto fields = split_unescaped(group, '|');
    if (fields.size() != 3) throw ParseError("entity structure needs 3 fields", group);
    EntityStructure s;
    s.mention = unescape_field(text::trim(fields[0]));
    auto type = unescape_field(text::trim(fields[1]));
    if (!type.empty()) s.type_label = std::move(type);
    if (!text::trim(fields[2]).empty()) {
      for (const auto& rel : split_unescaped(fields[2], ',')) {
        s.relations.push_back(unescape_field(text::trim(rel)));
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

// Candidate relation labels of an entity: predicates in the profile's
// relation namespaces, mapped to labels and deduplicated.
inline std::vector<std::string> candidate_relation_labels(const KbStore& store, const Iri& entity) {
  std::set<std::string> labels;
  for (const auto& p : store.relations_of(entity)) {
    if (store.profile().is_relation_namespace(p.str())) labels.insert(store.label_of(p));
  }
  return {labels.begin(), labels.end()};
}

inline EntityStructure build_entity_structure(const KbStore& store, std::string_view question,
                                              const LinkedEntity& entity, std::size_t max_relations,
                                              const RelationScorer& scorer) {
  EntityStructure s;
  s.mention = entity.mention;
  if (auto type = store.most_specific_type(entity.entity)) s.type_label = store.label_of(*type);
  auto ranked = rank_candidate_relations(question, candidate_relation_labels(store, entity.entity), scorer);
  if (ranked.size() > max_relations) ranked.resize(max_relations);
  s.relations = std::move(ranked);
  return s;
}

inline EntityStructure build_entity_structure(const KbStore& store, std::string_view question,
                                              const LinkedEntity& entity,
                                              std::size_t max_relations = kUnlimitedRelations) {
  return build_entity_structure(store, question, entity, max_relations, TrigramScorer{});
}

// Drops relations round-robin across entities, lowest-ranked first, until
// the rendering fits the budget. Returns false if even relation-free
// structures do not fit.
inline bool shrink_to_budget(std::string_view question, std::vector<EntityStructure>& structures,
                             std::size_t budget) {
  auto fits = [&] { return text::count_tokens(render_input(question, structures)) <= budget; };
  std::size_t next = 0;
  while (!fits()) {
    bool dropped = false;
    for (std::size_t tried = 0; tried < structures.size() && !dropped; ++tried) {
      auto& rels = structures[next].relations;
      next = (next + 1) % structures.size();
      if (!rels.empty()) {
        rels.pop_back();
        dropped = true;
      }
    }
    if (!dropped) return false;
  }
  return true;
}

inline EncoderInput build_encoder_input(const KbStore& store, std::string_view question,
                                        const std::vector<LinkedEntity>& entities, std::size_t budget,
                                        const RelationScorer& scorer,
                                        std::size_t max_relations = kUnlimitedRelations) {
  if (text::count_tokens(question) > budget) {
    throw InputTooLongError("question has " + std::to_string(text::count_tokens(question)) +
                            " tokens, budget is " + std::to_string(budget));
  }
  EncoderInput input;
  input.question = std::string(question);
  input.budget = budget;
  for (const auto& e : entities) {
    input.structures.push_back(build_entity_structure(store, question, e, max_relations, scorer));
  }
  if (!shrink_to_budget(question, input.structures, budget)) {
    throw InputTooLongError("entity structures exceed the budget of " + std::to_string(budget) +
                            " tokens even without relations");
  }
  input.rendered = render_input(question, input.structures);
  return input;
}

inline EncoderInput build_encoder_input(const KbStore& store, std::string_view question,
                                        const std::vector<LinkedEntity>& entities,
                                        std::size_t budget = kDefaultBudget) {
  return build_encoder_input(store, question, entities, budget, TrigramScorer{});
}

// The bare question, as used when knowledge integration is disabled.
inline EncoderInput question_only_input(std::string_view question, std::size_t budget = kDefaultBudget) {
  EncoderInput input;
  input.question = std::string(question);
  input.rendered = input.question;
  input.budget = budget;
  return input;
}

}  // namespace rellink
