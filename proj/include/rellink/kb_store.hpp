#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "rellink/error.hpp"
#include "rellink/ntriples.hpp"
#include "rellink/term.hpp"
#include "rellink/text.hpp"

namespace rellink {

using TermId = std::uint32_t;

// The only two variables a candidate graph may use: ?x joins all pairs of a
// sequence, ?y stands for a Wh placeholder.
enum class Variable : std::uint8_t { kX = 0, kY = 1 };

inline std::string to_string(Variable v) { return v == Variable::kX ? "?x" : "?y"; }

struct PatternTerm {
  std::variant<Term, Variable> value;

  static PatternTerm var(Variable v) { return {v}; }
  static PatternTerm constant(Term t) { return {std::move(t)}; }
  static PatternTerm iri(const Iri& i) { return {Term::iri(i)}; }

  bool is_variable() const { return std::holds_alternative<Variable>(value); }
  Variable variable() const { return std::get<Variable>(value); }
  const Term& term() const { return std::get<Term>(value); }

  std::string to_string() const {
    return is_variable() ? rellink::to_string(variable()) : term().to_ntriples();
  }

  friend bool operator==(const PatternTerm&, const PatternTerm&) = default;
};

// How a pattern's predicate connects subject and object.
//   kDirect:    subject -predicate-> object
//   kStatement: subject -entry-> [statement] -predicate-> object
//   kQualifier: subject -(any statement-entry predicate)-> [statement] -predicate-> object
// The statement node is existential and local to the pattern.
enum class Route : std::uint8_t { kDirect, kStatement, kQualifier };

struct TriplePattern {
  PatternTerm subject;
  Iri predicate;
  PatternTerm object;
  Route route = Route::kDirect;
  std::optional<Iri> entry;

  bool mentions(Variable v) const {
    return (subject.is_variable() && subject.variable() == v) ||
           (object.is_variable() && object.variable() == v);
  }

  std::string to_string() const {
    std::string pred = "<" + predicate.str() + ">";
    if (route == Route::kStatement) pred = "<" + entry->str() + ">/" + pred;
    if (route == Route::kQualifier) pred = "*/" + pred;
    return "(" + subject.to_string() + " " + pred + " " + object.to_string() + ")";
  }

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
};

struct Binding {
  std::optional<Term> x;
  std::optional<Term> y;

  const std::optional<Term>& operator[](Variable v) const { return v == Variable::kX ? x : y; }
  friend bool operator==(const Binding&, const Binding&) = default;
};

class KbStore;
KbStore load_kb(std::istream& triples, std::istream* ontology, const Profile& profile);

// Immutable after load_kb; every query is const and safe to share across threads.
class KbStore {
 public:
  KbStore() : KbStore(Profile::dbpedia()) {}
  explicit KbStore(Profile profile) : profile_(std::move(profile)) {}

  const Profile& profile() const { return profile_; }

  std::size_t triple_count() const { return triples_.size(); }
  std::size_t predicate_count() const { return predicates_.size(); }
  std::size_t lexicon_size() const { return lexicon_.size(); }
  std::size_t statement_count() const { return statements_.size(); }
  std::size_t class_count() const {
    std::set<std::string> classes;
    for (const auto& [child, parents] : parents_) {
      classes.insert(child);
      classes.insert(parents.begin(), parents.end());
    }
    for (const auto& [cls, n] : counts_) classes.insert(cls);
    return classes.size();
  }

  // All triples, sorted by term id order (i.e. first appearance in the input).
  std::vector<Triple> triples() const {
    std::vector<Triple> out;
    out.reserve(triples_.size());
    for (const auto& t : triples_) {
      out.push_back(Triple{terms_[t[0]], Iri(terms_[t[1]].value), terms_[t[2]]});
    }
    return out;
  }

  bool contains(const Triple& t) const {
    auto s = find(t.subject);
    auto p = find(Term::iri(t.predicate));
    auto o = find(t.object);
    return s && p && o && std::binary_search(triples_.begin(), triples_.end(), Key{*s, *p, *o});
  }

  bool has_predicate(const Iri& p) const {
    auto id = find(Term::iri(p));
    return id && by_pred_.count(*id);
  }

  const std::vector<Iri>& predicates() const { return predicates_; }

  std::vector<Iri> predicates_between(const Term& subject, const Term& object) const {
    auto s = find(subject);
    auto o = find(object);
    if (!s || !o) return {};
    std::vector<Iri> out;
    for (TermId p : ids_at(so_, pair_key(*s, *o))) out.emplace_back(terms_[p].value);
    return out;
  }

  bool is_statement(const Term& t) const {
    auto id = find(t);
    return id && statements_.count(*id);
  }

  // Predicates on every edge touching the entity, either direction. Under the
  // Wikidata profile, statement nodes hanging off the entity contribute their
  // ps:/pq: predicates as well.
  std::vector<Iri> relations_of(const Iri& entity) const {
    std::set<Iri> out;
    auto id = find(Term::iri(entity));
    if (!id) return {};
    for (const auto& [p, o] : edges(out_, *id)) {
      out.insert(Iri(terms_[p].value));
      if (profile_.is_wikidata() && entry_preds_.count(p) && statements_.count(o)) {
        for (const auto& [p2, o2] : edges(out_, o)) out.insert(Iri(terms_[p2].value));
      }
    }
    for (const auto& [p, s] : edges(in_, *id)) out.insert(Iri(terms_[p].value));
    return {out.begin(), out.end()};
  }

  // Asserted types minus those that are ancestors of another asserted type;
  // ties among the survivors go to the larger instance count, then the
  // lexicographically smaller IRI.
  std::optional<Iri> most_specific_type(const Iri& entity) const {
    auto id = find(Term::iri(entity));
    if (!id) return std::nullopt;
    std::vector<Iri> asserted;
    for (const auto& [p, o] : edges(out_, *id)) {
      if (type_preds_.count(p) && terms_[o].is_iri()) asserted.emplace_back(terms_[o].value);
    }
    std::sort(asserted.begin(), asserted.end());
    asserted.erase(std::unique(asserted.begin(), asserted.end()), asserted.end());

    std::vector<Iri> specific;
    for (const auto& candidate : asserted) {
      const auto key = canonical(candidate.str());
      const bool generic = std::any_of(asserted.begin(), asserted.end(), [&](const Iri& other) {
        return other != candidate && ancestors(canonical(other.str())).count(key) > 0;
      });
      if (!generic) specific.push_back(candidate);
    }
    if (specific.empty()) return std::nullopt;
    return *std::min_element(specific.begin(), specific.end(), [&](const Iri& a, const Iri& b) {
      const auto ca = instance_count(a), cb = instance_count(b);
      if (ca != cb) return ca > cb;
      return a < b;
    });
  }

  std::size_t instance_count(const Iri& cls) const {
    auto it = counts_.find(canonical(cls.str()));
    return it == counts_.end() ? 0 : it->second;
  }

  // Transitive superclasses (canonical keys), excluding the class itself
  // unless it sits on a cycle (rejected at load).
  std::set<std::string> ancestors(const std::string& cls_key) const {
    std::set<std::string> seen;
    std::vector<std::string> stack{cls_key};
    while (!stack.empty()) {
      auto cur = std::move(stack.back());
      stack.pop_back();
      auto it = parents_.find(cur);
      if (it == parents_.end()) continue;
      for (const auto& p : it->second) {
        if (seen.insert(p).second) stack.push_back(p);
      }
    }
    return seen;
  }

  // Relation IRIs whose label normalizes to the same key, ordered by the
  // profile's namespace preference then lexicographically.
  std::vector<Iri> lookup_relation_label(std::string_view label) const {
    auto it = lexicon_.find(text::normalize_label(label));
    if (it == lexicon_.end()) return {};
    return it->second;
  }

  // Display label: an override from the ontology file, else the local name.
  std::string label_of(const Iri& iri) const {
    auto it = labels_.find(label_key(iri.str()));
    if (it != labels_.end() && !it->second.empty()) return it->second.front();
    return profile_.namespaces.local_name(iri.str());
  }

  // Labels of every predicate in a relation namespace, sorted and unique.
  std::vector<std::string> relation_labels() const {
    std::set<std::string> out;
    for (const auto& p : predicates_) {
      if (profile_.is_relation_namespace(p.str())) out.insert(label_of(p));
    }
    return {out.begin(), out.end()};
  }

  // First satisfying assignment of ?x/?y, searching patterns in order and
  // candidate edges in index order.
  std::optional<Binding> match_graph(std::span<const TriplePattern> graph) const {
    std::optional<Binding> found;
    solve(graph, [&](const Binding& b) {
      found = b;
      return false;
    });
    return found;
  }

  bool satisfiable(const TriplePattern& pattern) const {
    return match_graph(std::span<const TriplePattern>(&pattern, 1)).has_value();
  }

  // Every value the variable takes over all satisfying assignments.
  std::set<Term> answers(std::span<const TriplePattern> graph, Variable answer_var) const {
    std::set<Term> out;
    solve(graph, [&](const Binding& b) {
      if (b[answer_var]) out.insert(*b[answer_var]);
      return true;
    });
    return out;
  }

  // Calls visit(binding) for each satisfying assignment until it returns false.
  template <typename Visit>
  void solve(std::span<const TriplePattern> graph, Visit&& visit) const {
    std::vector<Resolved> resolved;
    resolved.reserve(graph.size());
    for (const auto& pattern : graph) {
      auto r = resolve(pattern);
      if (!r) return;
      resolved.push_back(*r);
    }
    std::array<std::optional<TermId>, 2> slots{};
    search(resolved, 0, slots, visit);
  }

  friend bool operator==(const KbStore& a, const KbStore& b) {
    auto ta = a.triples(), tb = b.triples();
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    return a.profile_.kind == b.profile_.kind && ta == tb && a.parents_ == b.parents_ &&
           a.counts_ == b.counts_ && a.labels_ == b.labels_ && a.lexicon_ == b.lexicon_;
  }

 private:
  friend KbStore load_kb(std::istream&, std::istream*, const Profile&);

  using Key = std::array<TermId, 3>;
  using EdgeList = std::vector<std::pair<TermId, TermId>>;

  struct Slot {
    bool is_var = false;
    Variable var = Variable::kX;
    TermId id = 0;
  };
  struct Resolved {
    Slot subject;
    TermId predicate;
    Slot object;
    Route route;
    std::optional<TermId> entry;
  };

  static std::uint64_t pair_key(TermId a, TermId b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  std::optional<TermId> find(const Term& t) const {
    auto it = ids_.find(t);
    if (it == ids_.end() && t.is_iri()) {
      // Compact spellings (dbo:state) resolve to the loaded expanded form.
      const auto expanded = canonical(t.value);
      if (expanded != t.value) it = ids_.find(Term::iri(expanded));
    }
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  TermId intern(const Term& t) {
    auto [it, inserted] = ids_.try_emplace(t, static_cast<TermId>(terms_.size()));
    if (inserted) terms_.push_back(t);
    return it->second;
  }

  std::string canonical(std::string_view iri) const { return profile_.namespaces.expand(iri); }

  // Wikidata property variants (wd:/wdt:/p:/ps:/pq:) share one label keyed by
  // the property id; everything else is keyed by its expanded IRI.
  std::string label_key(std::string_view iri) const {
    if (profile_.is_wikidata()) {
      if (auto s = profile_.namespaces.split(iri)) {
        static const std::set<std::string> shared{"wd", "wdt", "p", "ps", "pq"};
        if (shared.count(s->first)) return s->second;
      }
    }
    return canonical(iri);
  }

  static const EdgeList& edges(const std::unordered_map<TermId, EdgeList>& index, TermId id) {
    static const EdgeList empty;
    auto it = index.find(id);
    return it == index.end() ? empty : it->second;
  }

  static const std::vector<TermId>& ids_at(
      const std::unordered_map<std::uint64_t, std::vector<TermId>>& index, std::uint64_t key) {
    static const std::vector<TermId> empty;
    auto it = index.find(key);
    return it == index.end() ? empty : it->second;
  }

  std::optional<Slot> resolve_slot(const PatternTerm& t) const {
    if (t.is_variable()) return Slot{true, t.variable(), 0};
    auto id = find(t.term());
    if (!id) return std::nullopt;
    return Slot{false, Variable::kX, *id};
  }

  std::optional<Resolved> resolve(const TriplePattern& p) const {
    auto s = resolve_slot(p.subject);
    auto o = resolve_slot(p.object);
    auto pred = find(Term::iri(p.predicate));
    if (!s || !o || !pred) return std::nullopt;
    Resolved r{*s, *pred, *o, p.route, std::nullopt};
    if (p.route == Route::kStatement) {
      if (!p.entry) return std::nullopt;
      auto e = find(Term::iri(*p.entry));
      if (!e) return std::nullopt;
      r.entry = *e;
    }
    return r;
  }

  template <typename F>
  bool statements_from(const Resolved& r, TermId subject, F&& f) const {
    if (r.entry) {
      for (TermId st : ids_at(sp_, pair_key(subject, *r.entry))) {
        if (statements_.count(st) && !f(st)) return false;
      }
      return true;
    }
    for (const auto& [p, st] : edges(out_, subject)) {
      if (entry_preds_.count(p) && statements_.count(st) && !f(st)) return false;
    }
    return true;
  }

  template <typename F>
  bool statement_owners(const Resolved& r, TermId statement, F&& f) const {
    if (r.entry) {
      for (TermId s : ids_at(po_, pair_key(*r.entry, statement))) {
        if (!f(s)) return false;
      }
      return true;
    }
    for (const auto& [p, s] : edges(in_, statement)) {
      if (entry_preds_.count(p) && !f(s)) return false;
    }
    return true;
  }

  // Enumerates (subject, object) pairs satisfying one pattern given the
  // already-bound ends. f returns false to stop; so does this function.
  template <typename F>
  bool each_edge(const Resolved& r, std::optional<TermId> s, std::optional<TermId> o, F&& f) const {
    if (r.route == Route::kDirect) {
      if (s && o) {
        if (std::binary_search(triples_.begin(), triples_.end(), Key{*s, r.predicate, *o})) {
          return f(*s, *o);
        }
        return true;
      }
      if (s) {
        for (TermId obj : ids_at(sp_, pair_key(*s, r.predicate))) {
          if (!f(*s, obj)) return false;
        }
        return true;
      }
      if (o) {
        for (TermId subj : ids_at(po_, pair_key(r.predicate, *o))) {
          if (!f(subj, *o)) return false;
        }
        return true;
      }
      for (const auto& [subj, obj] : edges(by_pred_, r.predicate)) {
        if (!f(subj, obj)) return false;
      }
      return true;
    }

    if (s) {
      return statements_from(r, *s, [&](TermId st) {
        for (TermId obj : ids_at(sp_, pair_key(st, r.predicate))) {
          if (o && obj != *o) continue;
          if (!f(*s, obj)) return false;
        }
        return true;
      });
    }
    if (o) {
      for (TermId st : ids_at(po_, pair_key(r.predicate, *o))) {
        if (!statements_.count(st)) continue;
        if (!statement_owners(r, st, [&](TermId subj) { return f(subj, *o); })) return false;
      }
      return true;
    }
    for (const auto& [st, obj] : edges(by_pred_, r.predicate)) {
      if (!statements_.count(st)) continue;
      if (!statement_owners(r, st, [&](TermId subj) { return f(subj, obj); })) return false;
    }
    return true;
  }

  template <typename Visit>
  bool search(const std::vector<Resolved>& graph, std::size_t i,
              std::array<std::optional<TermId>, 2>& slots, Visit& visit) const {
    if (i == graph.size()) {
      Binding b;
      if (slots[0]) b.x = terms_[*slots[0]];
      if (slots[1]) b.y = terms_[*slots[1]];
      return visit(b);
    }
    const Resolved& r = graph[i];
    auto bound = [&](const Slot& slot) -> std::optional<TermId> {
      if (!slot.is_var) return slot.id;
      return slots[static_cast<int>(slot.var)];
    };
    return each_edge(r, bound(r.subject), bound(r.object), [&](TermId s, TermId o) {
      auto saved = slots;
      auto assign = [&](const Slot& slot, TermId value) {
        if (!slot.is_var) return true;
        auto& cur = slots[static_cast<int>(slot.var)];
        if (cur && *cur != value) return false;
        cur = value;
        return true;
      };
      bool keep_going = true;
      if (assign(r.subject, s) && assign(r.object, o)) {
        keep_going = search(graph, i + 1, slots, visit);
      }
      slots = saved;
      return keep_going;
    });
  }

  Profile profile_;
  std::vector<Term> terms_;
  std::unordered_map<Term, TermId> ids_;
  std::vector<Key> triples_;
  std::unordered_map<std::uint64_t, std::vector<TermId>> sp_, po_, so_;
  std::unordered_map<TermId, EdgeList> by_pred_, out_, in_;
  std::unordered_set<TermId> statements_, entry_preds_, type_preds_;
  std::vector<Iri> predicates_;
  std::map<std::string, std::vector<std::string>> parents_;
  std::map<std::string, std::size_t> counts_;
  std::map<std::string, std::vector<std::string>> labels_;
  std::map<std::string, std::vector<Iri>> lexicon_;
};

namespace detail {

inline std::string strip_angle(std::string_view s) {
  s = text::trim(s);
  if (s.size() >= 2 && s.front() == '<' && s.back() == '>') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

inline std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

}  // namespace detail

// Builds an immutable store from an N-Triples stream plus an optional
// ontology TSV (subclass / count / label records).
inline KbStore load_kb(std::istream& triples, std::istream* ontology, const Profile& profile) {
  KbStore kb(profile);
  const auto& ns = profile.namespaces;
  const auto type_key = ns.expand(profile.type_predicate);
  const auto subclass_key = ns.expand(profile.subclass_predicate);

  std::vector<std::pair<TermId, std::size_t>> statement_edges;  // (subject, line)
  std::map<std::string, std::size_t> derived_counts;

  ntriples::parse(triples, [&](Triple t, std::size_t lineno) {
    const TermId s = kb.intern(t.subject);
    const TermId p = kb.intern(Term::iri(t.predicate));
    const TermId o = kb.intern(t.object);
    kb.triples_.push_back({s, p, o});
    if (profile.is_wikidata()) {
      const auto prefix = ns.prefix_of(t.predicate.str());
      if (prefix == "ps" || prefix == "pq") statement_edges.emplace_back(s, lineno);
    }
  });

  std::sort(kb.triples_.begin(), kb.triples_.end());
  kb.triples_.erase(std::unique(kb.triples_.begin(), kb.triples_.end()), kb.triples_.end());

  std::set<TermId> preds;
  for (const auto& [s, p, o] : kb.triples_) {
    kb.sp_[KbStore::pair_key(s, p)].push_back(o);
    kb.po_[KbStore::pair_key(p, o)].push_back(s);
    kb.so_[KbStore::pair_key(s, o)].push_back(p);
    kb.by_pred_[p].emplace_back(s, o);
    kb.out_[s].emplace_back(p, o);
    kb.in_[o].emplace_back(p, s);
    preds.insert(p);
  }
  for (TermId p : preds) {
    const auto& iri = kb.terms_[p].value;
    kb.predicates_.emplace_back(iri);
    const auto key = ns.expand(iri);
    if (key == type_key) kb.type_preds_.insert(p);
    if (profile.is_wikidata() && ns.prefix_of(iri) == "p") kb.entry_preds_.insert(p);
  }

  for (const auto& [s, p, o] : kb.triples_) {
    if (kb.entry_preds_.count(p)) kb.statements_.insert(o);
    const auto pkey = ns.expand(kb.terms_[p].value);
    if (!kb.terms_[o].is_iri()) continue;
    if (kb.type_preds_.count(p)) ++derived_counts[ns.expand(kb.terms_[o].value)];
    if (pkey == subclass_key && kb.terms_[s].is_iri()) {
      kb.parents_[ns.expand(kb.terms_[s].value)].push_back(ns.expand(kb.terms_[o].value));
    }
  }
  for (const auto& [subject, lineno] : statement_edges) {
    if (!kb.statements_.count(subject)) {
      throw LoadError("ps:/pq: edge on " + kb.terms_[subject].to_ntriples() +
                          ", which is not the object of any p: edge",
                      lineno);
    }
  }
  kb.counts_ = derived_counts;

  if (ontology) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(*ontology, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
      const auto fields = detail::split_tabs(line);
      if (fields.size() != 3) throw LoadError("expected 3 tab-separated fields", lineno);
      const auto& kind = fields[0];
      if (kind == "subclass") {
        const auto child = detail::strip_angle(fields[1]);
        const auto parent = detail::strip_angle(fields[2]);
        if (!Iri::is_absolute(child) || !Iri::is_absolute(parent)) {
          throw LoadError("subclass record needs two IRIs", lineno);
        }
        kb.parents_[ns.expand(child)].push_back(ns.expand(parent));
      } else if (kind == "count") {
        const auto cls = detail::strip_angle(fields[1]);
        std::size_t n = 0;
        const auto digits = text::trim(fields[2]);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                           [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          throw LoadError("count must be a non-negative integer", lineno);
        }
        n = std::stoull(std::string(digits));
        kb.counts_[ns.expand(cls)] = n;
      } else if (kind == "label") {
        const auto iri = detail::strip_angle(fields[1]);
        const auto label = std::string(text::trim(fields[2]));
        if (!Iri::is_absolute(iri) || label.empty()) throw LoadError("bad label record", lineno);
        auto& slot = kb.labels_[kb.label_key(iri)];
        if (std::find(slot.begin(), slot.end(), label) == slot.end()) slot.push_back(label);
      } else {
        throw LoadError("unknown record type '" + kind + "'", lineno);
      }
    }
  }

  for (auto& [child, parents] : kb.parents_) {
    std::sort(parents.begin(), parents.end());
    parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
  }

  // Cycle check: iterative DFS with colors, reporting the offending path.
  {
    enum class Color { kWhite, kGrey, kBlack };
    std::map<std::string, Color> color;
    std::vector<std::string> path;
    std::function<void(const std::string&)> visit = [&](const std::string& node) {
      color[node] = Color::kGrey;
      path.push_back(node);
      auto it = kb.parents_.find(node);
      if (it != kb.parents_.end()) {
        for (const auto& parent : it->second) {
          auto c = color[parent];
          if (c == Color::kGrey) {
            auto from = std::find(path.begin(), path.end(), parent);
            std::string cycle;
            for (auto p = from; p != path.end(); ++p) cycle += *p + " -> ";
            throw LoadError("class hierarchy cycle: " + cycle + parent);
          }
          if (c == Color::kWhite) visit(parent);
        }
      }
      path.pop_back();
      color[node] = Color::kBlack;
    };
    for (const auto& [child, parents] : kb.parents_) {
      if (color[child] == Color::kWhite) visit(child);
    }
  }

  for (const auto& p : kb.predicates_) {
    std::set<std::string> labels{ns.local_name(p.str())};
    if (auto it = kb.labels_.find(kb.label_key(p.str())); it != kb.labels_.end()) {
      labels.insert(it->second.begin(), it->second.end());
    }
    for (const auto& label : labels) {
      const auto key = text::normalize_label(label);
      if (!key.empty()) kb.lexicon_[key].push_back(p);
    }
  }
  for (auto& [key, iris] : kb.lexicon_) {
    std::sort(iris.begin(), iris.end(), [&](const Iri& a, const Iri& b) {
      const auto ra = profile.namespace_rank(a.str()), rb = profile.namespace_rank(b.str());
      if (ra != rb) return ra < rb;
      return a < b;
    });
    iris.erase(std::unique(iris.begin(), iris.end()), iris.end());
  }
  return kb;
}

inline KbStore load_kb_files(const std::string& triples_path, const std::string& ontology_path,
                             const Profile& profile) {
  std::ifstream triples(triples_path);
  if (!triples) throw LoadError("cannot read " + triples_path);
  if (ontology_path.empty()) return load_kb(triples, nullptr, profile);
  std::ifstream ontology(ontology_path);
  if (!ontology) throw LoadError("cannot read " + ontology_path);
  return load_kb(triples, &ontology, profile);
}

}  // namespace rellink
