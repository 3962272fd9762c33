#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rellink/error.hpp"
#include "rellink/text.hpp"

namespace rellink {

// Question/relation-label similarity used to pre-rank candidate relations.
class RelationScorer {
 public:
  virtual ~RelationScorer() = default;
  virtual double score(std::string_view question, std::string_view label) const = 0;
};

namespace detail {

// Shared shape of both scorers: for each label token take its best match
// among the question tokens, then average over label tokens.
template <typename TokenSim>
double best_match_average(const std::vector<std::string>& question_tokens,
                          const std::vector<std::string>& label_tokens, TokenSim&& sim) {
  if (label_tokens.empty() || question_tokens.empty()) return 0.0;
  double total = 0.0;
  for (const auto& lt : label_tokens) {
    double best = 0.0;
    for (const auto& qt : question_tokens) best = std::max(best, sim(qt, lt));
    total += best;
  }
  return total / static_cast<double>(label_tokens.size());
}

}  // namespace detail

// Character trigrams of "#token#", counted.
inline std::map<std::string, int> char_trigrams(std::string_view token) {
  std::map<std::string, int> grams;
  const std::string padded = "#" + std::string(token) + "#";
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) ++grams[padded.substr(i, 3)];
  return grams;
}

inline double trigram_cosine(std::string_view a, std::string_view b) {
  const auto ga = char_trigrams(a);
  const auto gb = char_trigrams(b);
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [g, n] : ga) {
    na += static_cast<double>(n) * n;
    if (auto it = gb.find(g); it != gb.end()) dot += static_cast<double>(n) * it->second;
  }
  for (const auto& [g, n] : gb) nb += static_cast<double>(n) * n;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Default lexical scorer: trigram cosine between question words and the
// camel-case-split label words.
class TrigramScorer final : public RelationScorer {
 public:
  double score(std::string_view question, std::string_view label) const override {
    return detail::best_match_average(text::word_tokens(question), text::label_tokens(label),
                                      [](const std::string& q, const std::string& l) {
                                        return trigram_cosine(q, l);
                                      });
  }
};

// Scorer over pre-trained word vectors ("token v1 v2 ... vD" per line).
// Out-of-vocabulary tokens contribute zero similarity.
class WordVectorScorer final : public RelationScorer {
 public:
  static WordVectorScorer load(std::istream& in) {
    WordVectorScorer scorer;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::istringstream fields(line);
      std::string token;
      if (!(fields >> token)) continue;
      std::vector<double> vec;
      double v = 0.0;
      while (fields >> v) vec.push_back(v);
      if (!fields.eof()) {
        throw ConfigError("word vectors line " + std::to_string(lineno) + ": non-numeric component");
      }
      // word2vec text files may start with a "count dim" header
      if (lineno == 1 && vec.size() == 1 &&
          std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        continue;
      }
      if (vec.empty()) {
        throw ConfigError("word vectors line " + std::to_string(lineno) + ": no components");
      }
      if (scorer.dim_ == 0) scorer.dim_ = vec.size();
      if (vec.size() != scorer.dim_) {
        throw ConfigError("word vectors line " + std::to_string(lineno) + ": expected " +
                          std::to_string(scorer.dim_) + " components");
      }
      scorer.vectors_[text::to_lower(token)] = std::move(vec);
    }
    if (scorer.vectors_.empty()) throw ConfigError("word vector file is empty");
    return scorer;
  }

  static WordVectorScorer load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read word vector file " + path);
    return load(in);
  }

  std::size_t dimension() const { return dim_; }
  std::size_t vocabulary_size() const { return vectors_.size(); }

  double score(std::string_view question, std::string_view label) const override {
    return detail::best_match_average(text::word_tokens(question), text::label_tokens(label),
                                      [this](const std::string& q, const std::string& l) {
                                        return cosine(q, l);
                                      });
  }

 private:
  double cosine(const std::string& a, const std::string& b) const {
    if (a == b) return 1.0;
    auto ia = vectors_.find(a);
    auto ib = vectors_.find(b);
    if (ia == vectors_.end() || ib == vectors_.end()) return 0.0;
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      dot += ia->second[i] * ib->second[i];
      na += ia->second[i] * ia->second[i];
      nb += ib->second[i] * ib->second[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
  }

  std::size_t dim_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

struct ScoredLabel {
  std::string label;
  double score = 0.0;
};

// Descending score, ties broken lexicographically. Returns a permutation of labels.
inline std::vector<ScoredLabel> rank_with_scores(std::string_view question,
                                                 const std::vector<std::string>& labels,
                                                 const RelationScorer& scorer) {
  std::vector<ScoredLabel> ranked;
  ranked.reserve(labels.size());
  for (const auto& l : labels) ranked.push_back({l, scorer.score(question, l)});
  std::stable_sort(ranked.begin(), ranked.end(), [](const ScoredLabel& a, const ScoredLabel& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.label < b.label;
  });
  return ranked;
}

inline std::vector<std::string> rank_candidate_relations(std::string_view question,
                                                         const std::vector<std::string>& labels,
                                                         const RelationScorer& scorer) {
  std::vector<std::string> out;
  for (auto& s : rank_with_scores(question, labels, scorer)) out.push_back(std::move(s.label));
  return out;
}

inline std::vector<std::string> rank_candidate_relations(std::string_view question,
                                                         const std::vector<std::string>& labels) {
  return rank_candidate_relations(question, labels, TrigramScorer{});
}

}  // namespace rellink
