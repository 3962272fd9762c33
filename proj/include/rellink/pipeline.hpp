#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "rellink/evaluation.hpp"
#include "rellink/generator.hpp"
#include "rellink/kb_store.hpp"
#include "rellink/knowledge_integration.hpp"
#include "rellink/knowledge_validation.hpp"
#include "rellink/records.hpp"
#include "rellink/similarity.hpp"

// Batch drivers behind the ingest / link / eval subcommands.
namespace rellink::pipeline {

struct IngestStats {
  std::size_t triples = 0;
  std::size_t predicates = 0;
  std::size_t lexicon_labels = 0;
  std::size_t classes = 0;
  std::size_t statements = 0;
};

inline IngestStats ingest_stats(const KbStore& kb) {
  return {kb.triple_count(), kb.predicate_count(), kb.lexicon_size(), kb.class_count(), kb.statement_count()};
}

struct LinkOptions {
  std::size_t budget = kDefaultBudget;
  std::size_t max_relations = kUnlimitedRelations;
  LinkConfig link;
  bool without_kb = false;
  std::size_t workers = 1;
};

// Encoder input -> beams -> validated result. Without KB the raw question
// is the input and no validation is attempted.
inline LinkingResult link_question(const KbStore& kb, const Generator& generator, const RelationScorer& scorer,
                                   const records::QuestionRecord& q, const LinkOptions& options) {
  if (options.without_kb) {
    const auto input = question_only_input(q.question, options.budget);
    const auto beams = generator.generate(input, q.question_id);
    return fallback_result(kb, beams, q.entities, options.link.grammar);
  }
  const auto input =
      build_encoder_input(kb, q.question, q.entities, options.budget, scorer, options.max_relations);
  const auto beams = generator.generate(input, q.question_id);
  return link(kb, q.question, beams, q.entities, options.link);
}

// One output line per non-blank input line, in input order, whatever the
// worker count. Per-question failures become {"question_id","error"} lines.
inline std::size_t run_link(const KbStore& kb, const Generator& generator, const RelationScorer& scorer,
                            std::istream& questions, std::ostream& out, const LinkOptions& options) {
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  const std::size_t batch_size = 64 * workers;
  std::size_t written = 0;

  auto process = [&](const std::string& line) -> std::string {
    std::optional<std::string> id;
    try {
      const auto j = nlohmann::json::parse(line);
      if (j.contains("question_id")) id = question_id_string(j["question_id"]);
      const auto q = records::parse_question(j);
      return records::result_to_json(q.question_id, link_question(kb, generator, scorer, q, options)).dump();
    } catch (const nlohmann::json::exception& e) {
      return records::error_to_json(id, std::string("malformed question record: ") + e.what()).dump();
    } catch (const std::exception& e) {
      return records::error_to_json(id, e.what()).dump();
    }
  };

  std::vector<std::string> batch;
  auto flush = [&] {
    std::vector<std::string> results(batch.size());
    if (workers == 1 || batch.size() == 1) {
      for (std::size_t i = 0; i < batch.size(); ++i) results[i] = process(batch[i]);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < batch.size(); i += workers) results[i] = process(batch[i]);
        });
      }
      for (auto& t : pool) t.join();
    }
    for (const auto& r : results) out << r << '\n';
    written += results.size();
    batch.clear();
  };

  std::string line;
  while (std::getline(questions, line)) {
    if (text::trim(line).empty()) continue;
    batch.push_back(line);
    if (batch.size() >= batch_size) flush();
  }
  if (!batch.empty()) flush();
  out.flush();
  return written;
}

enum class EvalMode { kStrict, kRelaxed, kLabel };

inline EvalMode parse_eval_mode(std::string_view s) {
  if (s == "strict") return EvalMode::kStrict;
  if (s == "relaxed") return EvalMode::kRelaxed;
  if (s == "label-level" || s == "label") return EvalMode::kLabel;
  throw ConfigError("unknown eval mode '" + std::string(s) + "'");
}

template <typename Parse>
auto read_jsonl(std::istream& in, Parse&& parse, const char* what) {
  std::vector<decltype(parse(nlohmann::json{}))> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(parse(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw EvalError(std::string(what) + " line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

// Scores predictions against gold, aligned by question_id. Any id present on
// only one side is an error listing those ids. Relaxed mode needs the store.
inline EvalReport run_eval(std::istream& predictions, std::istream& gold, EvalMode mode,
                           const KbStore* kb = nullptr, RelaxMode relax = RelaxMode::kEqualAnswers) {
  auto preds = read_jsonl(predictions, records::parse_prediction, "predictions");
  auto golds = read_jsonl(gold, records::parse_gold, "gold");
  if (mode == EvalMode::kRelaxed && !kb) throw EvalError("relaxed evaluation needs a knowledge base");

  // Relations compare in expanded form, so dbo:state matches its full IRI.
  const Namespaces& ns = kb ? kb->profile().namespaces : Profile::dbpedia().namespaces;
  auto expand_all = [&](std::set<std::string>& rels) {
    std::set<std::string> out;
    for (const auto& r : rels) out.insert(ns.expand(r));
    rels = std::move(out);
  };
  for (auto& p : preds) expand_all(p.relations);
  for (auto& g : golds) {
    expand_all(g.relations);
    if (g.graph) {
      for (auto& pattern : g.graph->patterns) pattern.predicate = Iri(ns.expand(pattern.predicate.str()));
    }
  }

  std::map<std::string, const records::PredictionRecord*> by_id;
  for (const auto& p : preds) by_id[p.question_id] = &p;
  std::set<std::string> gold_ids;
  std::vector<std::string> missing;
  for (const auto& g : golds) {
    gold_ids.insert(g.question_id);
    if (!by_id.count(g.question_id)) missing.push_back("prediction for " + g.question_id);
  }
  for (const auto& p : preds) {
    if (!gold_ids.count(p.question_id)) missing.push_back("gold for " + p.question_id);
  }
  if (!missing.empty()) {
    std::string msg = "unaligned question ids:";
    for (const auto& m : missing) msg += "\n  missing " + m;
    throw EvalError(msg);
  }

  std::vector<EvalItem> items;
  for (const auto& g : golds) {
    const auto& p = *by_id.at(g.question_id);
    EvalItem item{g.question_id, g.relations, p.relations, std::nullopt};
    switch (mode) {
      case EvalMode::kStrict:
        break;
      case EvalMode::kRelaxed:
        if (g.graph) {
          item.score = relaxed_score(*kb, g, p.relations, relax).prf;
        } else {
          std::cerr << "warning: no gold graph for " << g.question_id << "; using strict score\n";
        }
        break;
      case EvalMode::kLabel: {
        std::set<std::string> gold_labels, pred_labels;
        for (const auto& r : g.relations) {
          gold_labels.insert(kb ? kb->label_of(Iri(r)) : ns.local_name(r));
        }
        if (p.has_labels) {
          pred_labels = p.labels;
        } else {
          for (const auto& r : p.relations) pred_labels.insert(kb ? kb->label_of(Iri(r)) : ns.local_name(r));
        }
        item.gold = normalized_labels(gold_labels);
        item.pred = normalized_labels(pred_labels);
        break;
      }
    }
    items.push_back(std::move(item));
  }
  return aggregate(items);
}

}  // namespace rellink::pipeline
