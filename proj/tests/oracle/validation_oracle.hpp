#pragma once

// Brute-force reference for beam validation. Works on plain strings and
// shares no code with the library: every per-pair pattern product is built
// without pruning and each graph is joined by trying every node assignment.

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline const std::string kOnt = "http://dbpedia.org/ontology/";
inline const std::string kProp = "http://dbpedia.org/property/";
inline const std::string kRes = "http://dbpedia.org/resource/";
inline const std::string kType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

using Triple = std::array<std::string, 3>;  // expanded IRIs or quoted literals

struct Pair {
  std::string argument;
  bool placeholder = false;
  std::string label;
};

struct Beam {
  std::vector<Pair> pairs;
  bool garbage = false;  // text that does not follow the pair grammar
};

struct Entity {
  std::string mention;
  std::string iri;
};

struct Case {
  std::vector<Triple> triples;
  std::string question;
  bool ask = false;
  std::vector<Entity> entities;
  std::vector<Beam> beams;  // rank order
  std::size_t beam_n = 50;
  std::size_t ask_n = 10;
};

struct Outcome {
  bool validated = false;
  std::vector<std::string> relations;
  std::size_t source_rank = 0;
  std::optional<bool> ask_answer;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

namespace detail {

inline std::string fold(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

// Term of a pattern: a constant node, or variable 0 (?x) / 1 (?y).
struct Slot {
  std::string node;
  int var = -1;
};

struct Pattern {
  Slot s;
  std::string p;
  Slot o;
};

class World {
 public:
  explicit World(const Case& c) {
    for (const auto& t : c.triples) {
      facts_.insert(t);
      nodes_.insert(t[0]);
      nodes_.insert(t[2]);
      if (t[1].starts_with(kOnt) || t[1].starts_with(kProp)) predicates_.insert(t[1]);
    }
    for (const auto& e : c.entities) mentions_[e.mention] = e.iri;
  }

  // Predicates whose folded local name equals the folded label, dbo: first.
  std::vector<std::string> uris_for(const std::string& label) const {
    std::vector<std::string> out;
    for (const auto& base : {kOnt, kProp}) {
      for (const auto& p : predicates_) {
        if (p.starts_with(base) && fold(p.substr(base.size())) == fold(label)) out.push_back(p);
      }
    }
    return out;
  }

  std::optional<std::string> resolve(const std::string& mention) const {
    auto it = mentions_.find(mention);
    if (it == mentions_.end()) return std::nullopt;
    return it->second;
  }

  bool holds(const std::vector<Pattern>& graph) const {
    bool uses_y = false;
    for (const auto& p : graph) uses_y = uses_y || p.s.var == 1 || p.o.var == 1;
    std::vector<std::string> ys(nodes_.begin(), nodes_.end());
    if (!uses_y) ys = {std::string()};
    for (const auto& x : nodes_) {
      for (const auto& y : ys) {
        auto value = [&](const Slot& s) { return s.var == 0 ? x : s.var == 1 ? y : s.node; };
        bool all = true;
        for (const auto& p : graph) {
          if (!facts_.count({value(p.s), p.p, value(p.o)})) {
            all = false;
            break;
          }
        }
        if (all) return true;
      }
    }
    return false;
  }

 private:
  std::set<Triple> facts_;
  std::set<std::string> nodes_;
  std::set<std::string> predicates_;
  std::map<std::string, std::string> mentions_;
};

inline std::vector<Pattern> both_ways(const World& w, const std::string& label, const Slot& a, const Slot& b) {
  std::vector<Pattern> out;
  for (const auto& uri : w.uris_for(label)) {
    out.push_back({a, uri, b});
    out.push_back({b, uri, a});
  }
  return out;
}

// First graph of the full product (last unit fastest) that holds.
inline std::optional<std::vector<Pattern>> first_holding(const World& w,
                                                         const std::vector<std::vector<Pattern>>& units) {
  if (units.empty()) return std::nullopt;
  for (const auto& u : units) {
    if (u.empty()) return std::nullopt;
  }
  std::vector<std::size_t> idx(units.size(), 0);
  while (true) {
    std::vector<Pattern> graph;
    for (std::size_t i = 0; i < units.size(); ++i) graph.push_back(units[i][idx[i]]);
    if (w.holds(graph)) return graph;
    std::size_t pos = units.size();
    while (true) {
      if (pos == 0) return std::nullopt;
      --pos;
      if (++idx[pos] < units[pos].size()) break;
      idx[pos] = 0;
    }
  }
}

inline std::vector<std::string> distinct_predicates(const std::vector<Pattern>& graph) {
  std::vector<std::string> out;
  for (const auto& p : graph) {
    if (std::find(out.begin(), out.end(), p.p) == out.end()) out.push_back(p.p);
  }
  return out;
}

inline bool resolvable(const World& w, const Beam& b) {
  if (b.garbage) return false;
  for (const auto& p : b.pairs) {
    if (!p.placeholder && !w.resolve(p.argument)) return false;
  }
  return true;
}

inline std::vector<std::vector<Pattern>> plain_units(const World& w, const Beam& b) {
  std::vector<std::vector<Pattern>> units;
  for (const auto& p : b.pairs) {
    const Slot x{"", 0};
    if (p.placeholder) {
      units.push_back(both_ways(w, p.label, Slot{"", 1}, x));
    } else {
      units.push_back(both_ways(w, p.label, Slot{*w.resolve(p.argument), -1}, x));
    }
  }
  return units;
}

// Yes/no units: within each label, entity arguments are bound two at a time
// in order of appearance; a unit sits at the position of its first member.
inline std::optional<std::vector<std::vector<Pattern>>> ask_units(const World& w, const Beam& b) {
  const auto n = b.pairs.size();
  std::vector<int> partner(n, -1);
  std::map<std::string, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < n; ++i) {
    if (!b.pairs[i].placeholder) by_label[fold(b.pairs[i].label)].push_back(i);
  }
  bool bound = false;
  for (const auto& [label, members] : by_label) {
    for (std::size_t k = 0; k + 1 < members.size(); k += 2) {
      partner[members[k]] = static_cast<int>(members[k + 1]);
      partner[members[k + 1]] = static_cast<int>(members[k]);
      bound = true;
    }
  }
  if (!bound) return std::nullopt;
  std::vector<std::vector<Pattern>> units;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = b.pairs[i];
    if (partner[i] >= 0) {
      if (static_cast<std::size_t>(partner[i]) < i) continue;
      const auto& q = b.pairs[static_cast<std::size_t>(partner[i])];
      units.push_back(both_ways(w, p.label, Slot{*w.resolve(p.argument), -1}, Slot{*w.resolve(q.argument), -1}));
    } else if (p.placeholder) {
      units.push_back(both_ways(w, p.label, Slot{"", 1}, Slot{"", 0}));
    } else {
      units.push_back(both_ways(w, p.label, Slot{*w.resolve(p.argument), -1}, Slot{"", 0}));
    }
  }
  return units;
}

inline Outcome fallback(const World& w, const Case& c) {
  Outcome out;
  for (std::size_t i = 0; i < c.beams.size(); ++i) {
    if (c.beams[i].garbage) continue;
    for (const auto& p : c.beams[i].pairs) {
      const auto uris = w.uris_for(p.label);
      if (!uris.empty() && std::find(out.relations.begin(), out.relations.end(), uris.front()) ==
                               out.relations.end()) {
        out.relations.push_back(uris.front());
      }
    }
    out.source_rank = i + 1;
    break;
  }
  return out;
}

}  // namespace detail

inline Outcome link(const Case& c) {
  using namespace detail;
  if (c.beams.empty()) return {};
  const World w(c);
  if (c.ask) {
    for (std::size_t i = 0; i < c.beams.size() && i < c.ask_n; ++i) {
      if (!resolvable(w, c.beams[i])) continue;
      const auto units = ask_units(w, c.beams[i]);
      if (!units) continue;
      if (auto g = first_holding(w, *units)) return {true, distinct_predicates(*g), i + 1, true};
    }
    auto out = fallback(w, c);
    out.ask_answer = false;
    return out;
  }
  for (std::size_t i = 0; i < c.beams.size() && i < c.beam_n; ++i) {
    if (!resolvable(w, c.beams[i])) continue;
    if (auto g = first_holding(w, plain_units(w, c.beams[i]))) return {true, distinct_predicates(*g), i + 1, {}};
  }
  return fallback(w, c);
}

// Random small fixture: at most 50 triples over 10 entities and 6 relation
// labels, each label available under dbo:, dbp: or both.
inline Case random_case(std::mt19937& rng) {
  static const std::vector<std::string> names{"Alpha", "Bravo",  "Delta", "Echo", "Foxtrot",
                                              "Golf",  "Hotel",  "India", "Juliet", "Kilo"};
  static const std::vector<std::string> labels{"author", "spouse", "capital", "leader", "owner", "genre"};
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  Case c;
  std::vector<std::vector<std::string>> bases(labels.size());
  for (auto& b : bases) {
    switch (pick(3)) {
      case 0: b = {kOnt}; break;
      case 1: b = {kProp}; break;
      default: b = {kOnt, kProp}; break;
    }
  }
  const std::size_t used_labels = 2 + pick(labels.size() - 1);  // some labels never occur
  const std::size_t n_triples = 1 + pick(50);
  for (std::size_t i = 0; i < n_triples; ++i) {
    if (chance(0.08)) {
      c.triples.push_back({kRes + names[pick(names.size())], kType, kOnt + "Thing"});
      continue;
    }
    const auto l = pick(used_labels);
    const auto& base = bases[l][pick(bases[l].size())];
    const std::string object = chance(0.1) ? "\"" + std::to_string(pick(3)) + "\"" : kRes + names[pick(names.size())];
    c.triples.push_back({kRes + names[pick(names.size())], base + labels[l], object});
  }

  c.ask = chance(0.3);
  std::vector<std::string> chosen;
  const std::size_t n_entities = 1 + pick(3);
  while (chosen.size() < n_entities) {
    const auto& n = names[pick(names.size())];
    if (std::find(chosen.begin(), chosen.end(), n) == chosen.end()) chosen.push_back(n);
  }
  c.question = c.ask ? "Is" : "Which thing relates";
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    c.question += (i == 0 ? " " : " and ") + chosen[i];
    c.entities.push_back({chosen[i], kRes + chosen[i]});
  }
  c.question += "?";

  const std::size_t n_beams = pick(12) == 0 ? 0 : 1 + pick(6);
  for (std::size_t b = 0; b < n_beams; ++b) {
    Beam beam;
    if (chance(0.08)) {
      beam.garbage = true;
      c.beams.push_back(beam);
      continue;
    }
    const std::size_t n_pairs = 1 + pick(3);
    for (std::size_t k = 0; k < n_pairs; ++k) {
      Pair p;
      if (chance(0.15)) {
        p.placeholder = true;
        p.argument = chance(0.5) ? "which" : "Who";
      } else if (chance(0.05)) {
        p.argument = "Zulu";  // not a linked mention
      } else {
        p.argument = chosen[pick(chosen.size())];
      }
      p.label = chance(0.05) ? "missing" : labels[pick(labels.size())];
      if (chance(0.2)) p.label[0] = static_cast<char>(std::toupper(p.label[0]));
      beam.pairs.push_back(p);
    }
    c.beams.push_back(beam);
  }
  c.beam_n = 1 + pick(6);
  c.ask_n = 1 + pick(6);
  return c;
}

}  // namespace oracle
