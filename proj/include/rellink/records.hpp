#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "rellink/error.hpp"
#include "rellink/evaluation.hpp"
#include "rellink/generator.hpp"
#include "rellink/kb_store.hpp"
#include "rellink/knowledge_validation.hpp"
#include "rellink/sequence_grammar.hpp"
#include "rellink/text.hpp"

// JSON Lines record formats read and written by the command-line tool.
namespace rellink::records {

using ordered_json = nlohmann::ordered_json;

// {"question_id","question","entities":[{"mention","start","end","iri"}]}
struct QuestionRecord {
  std::string question_id;
  std::string question;
  std::vector<LinkedEntity> entities;
};

inline QuestionRecord parse_question(const nlohmann::json& j) {
  QuestionRecord q;
  try {
    q.question_id = question_id_string(j.at("question_id"));
    q.question = j.at("question").get<std::string>();
    const auto length = text::utf8_length(q.question);
    if (j.contains("entities")) {
      for (const auto& e : j.at("entities")) {
        LinkedEntity entity;
        entity.mention = e.at("mention").get<std::string>();
        entity.start = e.at("start").get<std::size_t>();
        entity.end = e.at("end").get<std::size_t>();
        entity.entity = Iri(e.at("iri").get<std::string>());
        if (entity.start >= entity.end || entity.end > length) {
          throw Error("entity '" + entity.mention + "' has offsets outside the question");
        }
        if (text::utf8_substr(q.question, entity.start, entity.end) != entity.mention) {
          throw Error("entity mention '" + entity.mention + "' does not match question text at [" +
                      std::to_string(entity.start) + "," + std::to_string(entity.end) + ")");
        }
        q.entities.push_back(std::move(entity));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad question record: ") + e.what());
  }
  std::stable_sort(q.entities.begin(), q.entities.end(),
                   [](const LinkedEntity& a, const LinkedEntity& b) { return a.start < b.start; });
  return q;
}

// {"question_id","relations":[...],"validated",b,"source_rank",n,"ask_answer":null|b,"labels":[...]}
inline ordered_json result_to_json(const std::string& question_id, const LinkingResult& r) {
  ordered_json j;
  j["question_id"] = question_id;
  j["relations"] = ordered_json::array();
  for (const auto& iri : r.relations) j["relations"].push_back(iri.str());
  j["validated"] = r.validated;
  j["source_rank"] = r.source_rank;
  j["ask_answer"] = r.ask_answer ? ordered_json(*r.ask_answer) : ordered_json(nullptr);
  j["labels"] = r.labels;
  return j;
}

inline ordered_json error_to_json(const std::optional<std::string>& question_id, const std::string& message) {
  ordered_json j;
  j["question_id"] = question_id ? ordered_json(*question_id) : ordered_json(nullptr);
  j["error"] = message;
  return j;
}

struct PredictionRecord {
  std::string question_id;
  std::set<std::string> relations;
  std::set<std::string> labels;
  bool has_labels = false;
  std::optional<std::string> error;
};

inline PredictionRecord parse_prediction(const nlohmann::json& j) {
  PredictionRecord p;
  try {
    p.question_id = question_id_string(j.at("question_id"));
    if (j.contains("error")) p.error = j.at("error").get<std::string>();
    if (j.contains("relations")) {
      for (const auto& r : j.at("relations")) p.relations.insert(r.get<std::string>());
    }
    if (j.contains("labels")) {
      p.has_labels = true;
      for (const auto& l : j.at("labels")) p.labels.insert(l.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw EvalError(std::string("bad prediction record: ") + e.what());
  }
  return p;
}

namespace detail {

inline PatternTerm gold_term(const std::string& raw, std::map<std::string, Variable>& vars) {
  if (raw.starts_with("?")) {
    if (auto it = vars.find(raw); it != vars.end()) return PatternTerm::var(it->second);
    if (vars.size() == 2) throw EvalError("gold graph uses more than two variables");
    const auto v = vars.empty() ? Variable::kX : Variable::kY;
    vars.emplace(raw, v);
    return PatternTerm::var(v);
  }
  if (raw.starts_with("\"")) return PatternTerm::constant(Term::literal(raw));
  if (raw.starts_with("_:")) return PatternTerm::constant(Term::blank(raw));
  std::string iri = raw;
  if (iri.size() >= 2 && iri.front() == '<' && iri.back() == '>') iri = iri.substr(1, iri.size() - 2);
  return PatternTerm::iri(Iri(iri));
}

}  // namespace detail

// {"question_id","question","relations":[...],"graph":[[s,p,o],...],"answer_var":"?uri"}
// Graph variables may have any "?name"; at most two distinct ones. The
// answer variable defaults to the most recently introduced one.
inline GoldRecord parse_gold(const nlohmann::json& j) {
  GoldRecord g;
  try {
    g.question_id = question_id_string(j.at("question_id"));
    g.question = j.value("question", "");
    for (const auto& r : j.at("relations")) g.relations.insert(r.get<std::string>());
    if (j.contains("graph") && !j.at("graph").is_null()) {
      GoldGraph graph;
      std::map<std::string, Variable> vars;
      std::string last_var;
      for (const auto& t : j.at("graph")) {
        if (!t.is_array() || t.size() != 3) throw EvalError("gold graph patterns are [s, p, o] triples");
        const auto s = t[0].get<std::string>(), p = t[1].get<std::string>(), o = t[2].get<std::string>();
        for (const auto& name : {s, o}) {
          if (name.starts_with("?") && !vars.count(name)) last_var = name;
        }
        TriplePattern pattern;
        pattern.subject = detail::gold_term(s, vars);
        std::string pred = p;
        if (pred.starts_with("?")) throw EvalError("gold graph predicates must be IRIs");
        if (pred.size() >= 2 && pred.front() == '<') pred = pred.substr(1, pred.size() - 2);
        pattern.predicate = Iri(pred);
        pattern.object = detail::gold_term(o, vars);
        graph.patterns.push_back(std::move(pattern));
      }
      std::string answer = j.value("answer_var", vars.count("?uri") ? std::string("?uri") : last_var);
      auto it = vars.find(answer);
      if (it == vars.end()) throw EvalError("answer variable " + answer + " does not occur in the gold graph");
      graph.answer_var = it->second;
      g.graph = std::move(graph);
    }
  } catch (const nlohmann::json::exception& e) {
    throw EvalError(std::string("bad gold record: ") + e.what());
  } catch (const EvalError&) {
    throw;
  } catch (const Error& e) {
    throw EvalError(std::string("bad gold record: ") + e.what());
  }
  return g;
}

}  // namespace rellink::records
