#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "rellink/error.hpp"
#include "rellink/knowledge_integration.hpp"
#include "rellink/sequence_grammar.hpp"
#include "rellink/similarity.hpp"

namespace rellink {

enum class GeneratorKind { kFixture, kRemote, kBaseline };

inline GeneratorKind parse_generator_kind(std::string_view s) {
  if (s == "fixture") return GeneratorKind::kFixture;
  if (s == "remote") return GeneratorKind::kRemote;
  if (s == "baseline") return GeneratorKind::kBaseline;
  throw ConfigError("unknown generator '" + std::string(s) + "'");
}

struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::kBaseline;
  std::size_t beam_width = 50;
  std::string fixture_path;
  std::string endpoint;  // e.g. http://localhost:8080
  double timeout_seconds = 30.0;
};

// Sorts by descending score (ties: text), truncates to width and numbers ranks from 1.
inline std::vector<OutputSequence> rank_beams(std::vector<OutputSequence> beams, std::size_t width) {
  std::stable_sort(beams.begin(), beams.end(), [](const OutputSequence& a, const OutputSequence& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.text < b.text;
  });
  if (beams.size() > width) beams.resize(width);
  for (std::size_t i = 0; i < beams.size(); ++i) beams[i].rank = i + 1;
  return beams;
}

// Source of ranked output sequences for an encoder input.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::vector<OutputSequence> generate(const EncoderInput& input,
                                               std::string_view question_id) const = 0;
};

inline std::vector<OutputSequence> beams_from_json(const nlohmann::json& array) {
  std::vector<OutputSequence> out;
  if (!array.is_array()) throw GeneratorError("expected an array of sequences");
  for (const auto& b : array) {
    if (!b.is_object() || !b.contains("text") || !b["text"].is_string()) {
      throw GeneratorError("sequence without a text field");
    }
    OutputSequence seq;
    seq.text = b["text"].get<std::string>();
    if (b.contains("score")) {
      if (!b["score"].is_number()) throw GeneratorError("non-numeric sequence score");
      seq.score = b["score"].get<double>();
    }
    out.push_back(std::move(seq));
  }
  return out;
}

inline std::string question_id_string(const nlohmann::json& id) {
  return id.is_string() ? id.get<std::string>() : id.dump();
}

// Replays beams stored as JSON Lines: {"question_id", "beams":[{"text","score"}]}.
class FixtureGenerator final : public Generator {
 public:
  FixtureGenerator(std::istream& in, std::size_t beam_width) : beam_width_(beam_width) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (text::trim(line).empty()) continue;
      try {
        const auto record = nlohmann::json::parse(line);
        beams_[question_id_string(record.at("question_id"))] = beams_from_json(record.at("beams"));
      } catch (const nlohmann::json::exception& e) {
        throw GeneratorError("beam fixture line " + std::to_string(lineno) + ": " + e.what());
      } catch (const GeneratorError& e) {
        throw GeneratorError("beam fixture line " + std::to_string(lineno) + ": " + e.what());
      }
    }
  }

  static std::unique_ptr<FixtureGenerator> from_file(const std::string& path, std::size_t beam_width) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read beam fixture " + path);
    return std::make_unique<FixtureGenerator>(in, beam_width);
  }

  std::vector<OutputSequence> generate(const EncoderInput&, std::string_view question_id) const override {
    auto it = beams_.find(std::string(question_id));
    if (it == beams_.end()) {
      std::cerr << "warning: no beams for question " << question_id << " in fixture\n";
      return {};
    }
    return rank_beams(it->second, beam_width_);
  }

 private:
  std::size_t beam_width_;
  std::map<std::string, std::vector<OutputSequence>> beams_;
};

// POST {endpoint}/generate {"input": rendered, "beams": N}
//   -> {"sequences": [{"text", "score"}]}
// A fresh client per call, so one instance can serve several worker threads.
class RemoteGenerator final : public Generator {
 public:
  RemoteGenerator(std::string endpoint, std::size_t beam_width, double timeout_seconds)
      : endpoint_(std::move(endpoint)), beam_width_(beam_width), timeout_(timeout_seconds) {
    if (endpoint_.empty()) throw ConfigError("remote generator needs an endpoint");
  }

  std::vector<OutputSequence> generate(const EncoderInput& input, std::string_view) const override {
    httplib::Client client(endpoint_);
    const auto secs = static_cast<time_t>(timeout_);
    const auto usecs = static_cast<time_t>((timeout_ - static_cast<double>(secs)) * 1e6);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);

    const nlohmann::json body{{"input", input.rendered}, {"beams", beam_width_}};
    auto res = client.Post("/generate", body.dump(), "application/json");
    if (!res) {
      throw GeneratorError("request to " + endpoint_ + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw GeneratorError("generator returned HTTP " + std::to_string(res->status));
    }
    try {
      const auto reply = nlohmann::json::parse(res->body);
      return rank_beams(beams_from_json(reply.at("sequences")), beam_width_);
    } catch (const nlohmann::json::exception& e) {
      throw GeneratorError(std::string("malformed generator reply: ") + e.what());
    }
  }

 private:
  std::string endpoint_;
  std::size_t beam_width_;
  double timeout_;
};

// Deterministic stand-in for a trained model: pairs each entity mention with
// its top-k candidate relations (k^E >= width) and emits the cartesian
// product scored by summed similarity.
class BaselineGenerator final : public Generator {
 public:
  BaselineGenerator(std::size_t beam_width, std::shared_ptr<const RelationScorer> scorer,
                    std::vector<std::string> fallback_labels = {},
                    std::set<std::string> wh_lexicon = default_wh_lexicon())
      : beam_width_(beam_width),
        scorer_(std::move(scorer)),
        fallback_labels_(std::move(fallback_labels)),
        wh_lexicon_(std::move(wh_lexicon)) {}

  explicit BaselineGenerator(std::size_t beam_width)
      : BaselineGenerator(beam_width, std::make_shared<TrigramScorer>()) {}

  std::vector<OutputSequence> generate(const EncoderInput& input, std::string_view) const override {
    return baseline_generate(input, beam_width_);
  }

  // Smallest k >= 1 with k^entities >= width.
  static std::size_t per_entity_choices(std::size_t width, std::size_t entities) {
    if (entities == 0 || width <= 1) return 1;
    std::size_t k = 1;
    while (true) {
      long double power = 1;
      for (std::size_t i = 0; i < entities; ++i) power *= static_cast<long double>(k);
      if (power >= static_cast<long double>(width)) return k;
      ++k;
    }
  }

  std::vector<OutputSequence> baseline_generate(const EncoderInput& input, std::size_t width) const {
    if (width == 0) return {};
    if (input.structures.empty()) return placeholder_beam(input.question);

    const auto with_relations = static_cast<std::size_t>(
        std::count_if(input.structures.begin(), input.structures.end(),
                      [](const EntityStructure& s) { return !s.relations.empty(); }));
    const std::size_t k = per_entity_choices(width, with_relations);
    std::vector<std::vector<std::pair<ArgRelPair, double>>> choices;
    for (const auto& s : input.structures) {
      if (s.relations.empty()) continue;
      std::vector<std::pair<ArgRelPair, double>> options;
      for (std::size_t i = 0; i < s.relations.size() && i < k; ++i) {
        ArgRelPair pair{EntityArg{s.mention, std::nullopt, false}, s.relations[i]};
        options.emplace_back(std::move(pair), scorer_->score(input.question, s.relations[i]));
      }
      choices.push_back(std::move(options));
    }
    if (choices.empty()) return {};

    std::vector<OutputSequence> beams;
    std::vector<std::size_t> idx(choices.size(), 0);
    while (true) {
      std::vector<ArgRelPair> pairs;
      double score = 0.0;
      for (std::size_t e = 0; e < choices.size(); ++e) {
        pairs.push_back(choices[e][idx[e]].first);
        score += choices[e][idx[e]].second;
      }
      beams.push_back({serialize_target(pairs), score, 0});
      std::size_t pos = choices.size();
      while (pos > 0) {
        --pos;
        if (++idx[pos] < choices[pos].size()) break;
        idx[pos] = 0;
        if (pos == 0) return rank_beams(std::move(beams), width);
      }
    }
  }

 private:
  std::vector<OutputSequence> placeholder_beam(const std::string& question) const {
    if (fallback_labels_.empty()) return {};
    std::string wh = "What";
    for (const auto& token : text::split_whitespace(question)) {
      std::string word;
      for (char c : token) {
        if (!text::is_alnum(c)) break;
        word.push_back(c);
      }
      if (wh_lexicon_.count(text::to_lower(word))) {
        wh = word;
        break;
      }
    }
    const auto ranked = rank_with_scores(question, fallback_labels_, *scorer_);
    ArgRelPair pair{PlaceholderArg{wh}, ranked.front().label};
    return {{serialize_target({pair}), ranked.front().score, 1}};
  }

  std::size_t beam_width_;
  std::shared_ptr<const RelationScorer> scorer_;
  std::vector<std::string> fallback_labels_;
  std::set<std::string> wh_lexicon_;
};

inline std::unique_ptr<Generator> make_generator(const GeneratorConfig& config,
                                                 std::shared_ptr<const RelationScorer> scorer,
                                                 std::vector<std::string> fallback_labels = {}) {
  if (config.beam_width == 0) throw ConfigError("beam width must be at least 1");
  switch (config.kind) {
    case GeneratorKind::kFixture:
      return FixtureGenerator::from_file(config.fixture_path, config.beam_width);
    case GeneratorKind::kRemote:
      return std::make_unique<RemoteGenerator>(config.endpoint, config.beam_width, config.timeout_seconds);
    case GeneratorKind::kBaseline:
      return std::make_unique<BaselineGenerator>(config.beam_width, std::move(scorer),
                                                 std::move(fallback_labels));
  }
  throw ConfigError("unknown generator kind");
}

}  // namespace rellink
