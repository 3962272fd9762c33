#pragma once

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rellink/error.hpp"
#include "rellink/kb_store.hpp"
#include "rellink/text.hpp"

namespace rellink {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  friend bool operator==(const Prf&, const Prf&) = default;
};

// Set-based P/R/F1. An empty prediction scores P=1 only against an empty
// gold set (and symmetrically for R); F1 is 0 when P+R is 0.
inline Prf score_sets(const std::set<std::string>& gold, const std::set<std::string>& pred) {
  std::size_t hits = 0;
  for (const auto& p : pred) hits += gold.count(p);
  Prf s;
  s.precision = pred.empty() ? (gold.empty() ? 1.0 : 0.0)
                             : static_cast<double>(hits) / static_cast<double>(pred.size());
  s.recall = gold.empty() ? (pred.empty() ? 1.0 : 0.0)
                          : static_cast<double>(hits) / static_cast<double>(gold.size());
  s.f1 = s.precision + s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

// A gold query graph; variables are renamed onto ?x/?y in order of appearance.
struct GoldGraph {
  std::vector<TriplePattern> patterns;
  Variable answer_var = Variable::kX;
};

struct GoldRecord {
  std::string question_id;
  std::string question;
  std::set<std::string> relations;
  std::optional<GoldGraph> graph;
};

struct EvalItem {
  std::string question_id;
  std::set<std::string> gold;
  std::set<std::string> pred;
  // Set when the score is not plain score_sets(gold, pred), e.g. relaxed mode.
  std::optional<Prf> score;
};

struct QuestionScore {
  std::string question_id;
  Prf prf;
  std::size_t gold_count = 0;
  std::size_t pred_count = 0;
};

struct EvalReport {
  std::vector<QuestionScore> per_question;
  Prf macro;
  // Share of questions (percent) by predicted vs gold relation count.
  double pct_equal = 0.0;
  double pct_more = 0.0;
  double pct_fewer = 0.0;
};

// Macro-averaged P/R/F1 plus relation-count buckets, which compare only the
// sizes of the predicted and gold sets.
inline EvalReport aggregate(const std::vector<EvalItem>& items) {
  if (items.empty()) throw EvalError("nothing to evaluate");
  EvalReport report;
  std::size_t equal = 0, more = 0, fewer = 0;
  for (const auto& item : items) {
    QuestionScore q{item.question_id, item.score.value_or(score_sets(item.gold, item.pred)),
                    item.gold.size(), item.pred.size()};
    report.macro.precision += q.prf.precision;
    report.macro.recall += q.prf.recall;
    report.macro.f1 += q.prf.f1;
    if (q.pred_count == q.gold_count) {
      ++equal;
    } else if (q.pred_count > q.gold_count) {
      ++more;
    } else {
      ++fewer;
    }
    report.per_question.push_back(std::move(q));
  }
  const double n = static_cast<double>(items.size());
  report.macro.precision /= n;
  report.macro.recall /= n;
  report.macro.f1 /= n;
  report.pct_equal = 100.0 * static_cast<double>(equal) / n;
  report.pct_more = 100.0 * static_cast<double>(more) / n;
  report.pct_fewer = 100.0 * static_cast<double>(fewer) / n;
  return report;
}

enum class RelaxMode { kEqualAnswers, kOverlappingAnswers };

struct RelaxedScore {
  Prf prf;
  std::set<std::string> gold_used;  // relation set of the best-scoring variant
  bool fell_back = false;           // gold graph unsatisfiable; strict score returned
};

// IRI with its namespace swapped, keeping compact or expanded spelling.
inline std::optional<std::string> swap_namespace(const Namespaces& ns, const std::string& iri,
                                                 const std::string& from, const std::string& to) {
  auto split = ns.split(iri);
  if (!split || split->first != from) return std::nullopt;
  if (iri.starts_with(from + ":")) return to + ":" + split->second;
  auto base = ns.base_of(to);
  if (!base) return std::nullopt;
  return *base + split->second;
}

// Strict score against the best gold variant obtained by swapping
// equivalent namespaces (dbo:/dbp:) per pattern, among variants whose answer
// set equals (or, in overlap mode, intersects) the original's.
inline RelaxedScore relaxed_score(const KbStore& store, const GoldRecord& gold,
                                  const std::set<std::string>& pred,
                                  RelaxMode mode = RelaxMode::kEqualAnswers) {
  RelaxedScore out;
  if (!gold.graph) throw EvalError("relaxed scoring of " + gold.question_id + " needs a gold graph");
  const auto& patterns = gold.graph->patterns;
  const auto answer_var = gold.graph->answer_var;
  const auto original = store.answers(patterns, answer_var);
  if (original.empty()) {
    std::cerr << "warning: gold graph of " << gold.question_id
              << " is unsatisfiable; using strict score\n";
    out.prf = score_sets(gold.relations, pred);
    out.gold_used = gold.relations;
    out.fell_back = true;
    return out;
  }

  const auto& ns = store.profile().namespaces;
  std::vector<std::pair<std::size_t, Iri>> swaps;
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    for (const auto& [a, b] : store.profile().equivalent_namespaces) {
      for (const auto& [from, to] : {std::pair{a, b}, std::pair{b, a}}) {
        auto swapped = swap_namespace(ns, patterns[i].predicate.str(), from, to);
        if (swapped && store.has_predicate(Iri(*swapped))) swaps.emplace_back(i, Iri(*swapped));
      }
    }
  }

  std::set<std::string> original_preds;
  for (const auto& p : patterns) original_preds.insert(p.predicate.str());
  std::set<std::string> outside_graph;
  for (const auto& r : gold.relations) {
    if (!original_preds.count(r)) outside_graph.insert(r);
  }

  bool have_best = false;
  const std::size_t variants = std::size_t{1} << std::min<std::size_t>(swaps.size(), 20);
  for (std::size_t mask = 0; mask < variants; ++mask) {
    auto variant = patterns;
    bool clash = false;
    std::vector<bool> touched(patterns.size(), false);
    for (std::size_t s = 0; s < swaps.size() && s < 20; ++s) {
      if (!(mask & (std::size_t{1} << s))) continue;
      const auto& [pos, iri] = swaps[s];
      if (touched[pos]) clash = true;
      touched[pos] = true;
      variant[pos].predicate = iri;
    }
    if (clash) continue;
    if (mask != 0) {
      const auto answers = store.answers(variant, answer_var);
      if (answers.empty()) continue;
      if (mode == RelaxMode::kEqualAnswers && answers != original) continue;
      if (mode == RelaxMode::kOverlappingAnswers &&
          std::none_of(answers.begin(), answers.end(), [&](const Term& t) { return original.count(t) > 0; })) {
        continue;
      }
    }
    auto relations = outside_graph;
    for (const auto& p : variant) relations.insert(p.predicate.str());
    const auto prf = score_sets(relations, pred);
    if (!have_best || prf.f1 > out.prf.f1) {
      out.prf = prf;
      out.gold_used = std::move(relations);
      have_best = true;
    }
  }
  return out;
}

// Normalized labels for label-level comparison.
inline std::set<std::string> normalized_labels(const std::set<std::string>& labels) {
  std::set<std::string> out;
  for (const auto& l : labels) out.insert(text::normalize_label(l));
  return out;
}

inline nlohmann::json report_to_json(const EvalReport& r) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& q : r.per_question) {
    per.push_back({{"question_id", q.question_id},
                   {"precision", q.prf.precision},
                   {"recall", q.prf.recall},
                   {"f1", q.prf.f1},
                   {"gold_count", q.gold_count},
                   {"pred_count", q.pred_count}});
  }
  return {{"questions", r.per_question.size()},
          {"precision", r.macro.precision},
          {"recall", r.macro.recall},
          {"f1", r.macro.f1},
          {"relation_count", {{"pred_eq_gold", r.pct_equal}, {"pred_gt_gold", r.pct_more}, {"pred_lt_gold", r.pct_fewer}}},
          {"per_question", per}};
}

// Aligned text table: a P/R/F1 block and a relation-count block.
inline std::string report_to_table(const EvalReport& r, std::string_view system = "rellink") {
  auto fmt = [](const char* f, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, f, v);
    return std::string(buf);
  };
  std::ostringstream os;
  const std::string name(system);
  const std::size_t width = std::max<std::size_t>(name.size(), 8) + 2;
  auto pad = [&](const std::string& s) { return s + std::string(width - std::min(width, s.size()), ' '); };
  os << pad("") << "     P      R     F1\n";
  os << pad(name) << fmt("%6.2f", r.macro.precision) << " " << fmt("%6.2f", r.macro.recall) << " "
     << fmt("%6.2f", r.macro.f1) << "\n\n";
  os << pad("") << "pred=gold  pred>gold  pred<gold\n";
  os << pad(name) << fmt("%8.1f%%", r.pct_equal) << "  " << fmt("%8.1f%%", r.pct_more) << "  "
     << fmt("%8.1f%%", r.pct_fewer) << "\n";
  os << "(" << r.per_question.size() << " questions, macro-averaged)\n";
  return os.str();
}

}  // namespace rellink
