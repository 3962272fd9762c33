#include <random>

#include <gtest/gtest.h>

#include "rellink/evaluation.hpp"
#include "support/kb_fixture.hpp"

using namespace rellink;
using namespace rellink::testing;

namespace {

// Ben Ysursa's alma mater is linked by both namespaces; the state only by dbo.
KbStore alma_mater_kb() {
  return make_kb({{"dbr:Ben_Ysursa", "dbp:almaMater", "dbr:Gonzaga_University"},
                  {"dbr:Ben_Ysursa", "dbo:almaMater", "dbr:Gonzaga_University"},
                  {"dbr:Gonzaga_University", "dbo:state", "dbr:Washington"},
                  {"dbr:Gonzaga_University", "dbp:state", "\"Washington\"@en"}});
}

GoldRecord alma_mater_gold() {
  GoldRecord g;
  g.question_id = "lcq-1";
  g.relations = {dbp("almaMater"), dbo("state")};
  GoldGraph graph;
  graph.patterns = {{PatternTerm::iri(Iri(dbr("Ben_Ysursa"))), Iri(dbp("almaMater")), PatternTerm::var(Variable::kX),
                     Route::kDirect, std::nullopt},
                    {PatternTerm::var(Variable::kX), Iri(dbo("state")), PatternTerm::var(Variable::kY), Route::kDirect,
                     std::nullopt}};
  graph.answer_var = Variable::kY;
  g.graph = graph;
  return g;
}

}  // namespace

TEST(ScoreSets, AlmaMaterTable) {
  const std::set<std::string> gold{"dbp:almaMater", "dbo:state"};
  EXPECT_DOUBLE_EQ(score_sets(gold, {"dbp:almaMater", "dbo:state"}).f1, 1.0);
  EXPECT_DOUBLE_EQ(score_sets(gold, {"dbo:almaMater", "dbo:state"}).f1, 0.5);
  EXPECT_DOUBLE_EQ(score_sets(gold, {"dbp:almaMater", "dbp:state"}).f1, 0.5);
  EXPECT_DOUBLE_EQ(score_sets(gold, {"dbo:almaMater", "dbp:state"}).f1, 0.0);
}

TEST(ScoreSets, EmptySetConventions) {
  EXPECT_EQ(score_sets({}, {}), (Prf{1.0, 1.0, 1.0}));
  EXPECT_EQ(score_sets({"a"}, {}), (Prf{0.0, 0.0, 0.0}));
  EXPECT_EQ(score_sets({}, {"a"}), (Prf{0.0, 0.0, 0.0}));
}

TEST(ScoreSets, SymmetryAndHarmonicMean) {
  std::mt19937 rng(5);
  for (int i = 0; i < 500; ++i) {
    std::set<std::string> a, b;
    for (int k = 0; k < 6; ++k) {
      if (rng() % 2) a.insert(std::string(1, static_cast<char>('a' + k)));
      if (rng() % 2) b.insert(std::string(1, static_cast<char>('a' + k)));
    }
    const auto ab = score_sets(a, b), ba = score_sets(b, a);
    EXPECT_DOUBLE_EQ(ab.precision, ba.recall);
    EXPECT_DOUBLE_EQ(ab.recall, ba.precision);
    const double h = ab.precision + ab.recall > 0 ? 2 * ab.precision * ab.recall / (ab.precision + ab.recall) : 0.0;
    EXPECT_DOUBLE_EQ(ab.f1, h);
    EXPECT_GE(ab.f1, 0.0);
    EXPECT_LE(ab.f1, 1.0);
  }
}

TEST(Aggregate, MacroAverageAndBuckets) {
  const auto r = aggregate({{"q1", {"a"}, {"a"}, {}}, {"q2", {"a"}, {"b"}, {}}});
  EXPECT_DOUBLE_EQ(r.macro.f1, 0.5);
  EXPECT_DOUBLE_EQ(r.pct_equal, 100.0);

  const auto buckets = aggregate({{"1", {"a"}, {"a"}, {}},
                                  {"2", {"a", "b"}, {"a", "c"}, {}},
                                  {"3", {"a"}, {"a", "b"}, {}},
                                  {"4", {"a", "b"}, {"a"}, {}}});
  EXPECT_DOUBLE_EQ(buckets.pct_equal, 50.0);
  EXPECT_DOUBLE_EQ(buckets.pct_more, 25.0);
  EXPECT_DOUBLE_EQ(buckets.pct_fewer, 25.0);
  EXPECT_THROW(aggregate({}), EvalError);
}

TEST(Aggregate, ExplicitScoreOverridesSets) {
  const auto r = aggregate({{"q", {"a"}, {"b"}, Prf{1.0, 1.0, 1.0}}});
  EXPECT_DOUBLE_EQ(r.macro.f1, 1.0);
}

// Variants by hand: swapping almaMater keeps the answer {dbr:Washington};
// swapping state to dbp:state yields the literal, a different answer set.
// Accepted gold sets: {dbp:almaMater, dbo:state}, {dbo:almaMater, dbo:state}.
TEST(Relaxed, DualNamespaceFixture) {
  const auto kb = alma_mater_kb();
  const auto gold = alma_mater_gold();
  const std::set<std::string> pred{dbo("almaMater"), dbo("state")};
  EXPECT_DOUBLE_EQ(score_sets(gold.relations, pred).f1, 0.5);
  const auto relaxed = relaxed_score(kb, gold, pred);
  EXPECT_DOUBLE_EQ(relaxed.prf.f1, 1.0);
  EXPECT_EQ(relaxed.gold_used, pred);
  EXPECT_FALSE(relaxed.fell_back);

  const std::set<std::string> wrong{dbo("almaMater"), dbp("state")};
  EXPECT_DOUBLE_EQ(relaxed_score(kb, gold, wrong).prf.f1, 0.5);
  EXPECT_DOUBLE_EQ(relaxed_score(kb, gold, {}).prf.f1, 0.0);
}

TEST(Relaxed, OverlapModeAcceptsPartialAnswers) {
  auto kb = make_kb({{"dbr:Ben_Ysursa", "dbp:almaMater", "dbr:Gonzaga_University"},
                     {"dbr:Ben_Ysursa", "dbo:almaMater", "dbr:Gonzaga_University"},
                     {"dbr:Ben_Ysursa", "dbo:almaMater", "dbr:Boise_State"},
                     {"dbr:Boise_State", "dbo:state", "dbr:Idaho"},
                     {"dbr:Gonzaga_University", "dbo:state", "dbr:Washington"}});
  const auto gold = alma_mater_gold();
  const std::set<std::string> pred{dbo("almaMater"), dbo("state")};
  EXPECT_DOUBLE_EQ(relaxed_score(kb, gold, pred, RelaxMode::kEqualAnswers).prf.f1, 0.5);
  EXPECT_DOUBLE_EQ(relaxed_score(kb, gold, pred, RelaxMode::kOverlappingAnswers).prf.f1, 1.0);
}

TEST(Relaxed, NoVariantMeansStrict) {
  const auto kb = make_kb({{"dbr:Ben_Ysursa", "dbp:almaMater", "dbr:Gonzaga_University"},
                           {"dbr:Gonzaga_University", "dbo:state", "dbr:Washington"}});
  const auto gold = alma_mater_gold();
  const std::set<std::string> pred{dbo("almaMater"), dbo("state")};
  EXPECT_DOUBLE_EQ(relaxed_score(kb, gold, pred).prf.f1, score_sets(gold.relations, pred).f1);
}

TEST(Relaxed, UnsatisfiableGoldFallsBack) {
  const auto kb = make_kb({{"dbr:A", "dbo:p", "dbr:B"}});
  const auto r = relaxed_score(kb, alma_mater_gold(), {dbp("almaMater")});
  EXPECT_TRUE(r.fell_back);
  EXPECT_DOUBLE_EQ(r.prf.f1, score_sets(alma_mater_gold().relations, {dbp("almaMater")}).f1);
  GoldRecord no_graph;
  EXPECT_THROW(relaxed_score(kb, no_graph, {}), EvalError);
}

TEST(Report, TableAndJsonShapes) {
  const auto r = aggregate({{"q1", {"a"}, {"a"}, {}}, {"q2", {"a"}, {"b", "c"}, {}}});
  const auto table = report_to_table(r, "sys");
  EXPECT_NE(table.find("  0.50"), std::string::npos);
  EXPECT_NE(table.find("pred=gold"), std::string::npos);
  const auto j = report_to_json(r);
  EXPECT_EQ(j["questions"], 2);
  EXPECT_DOUBLE_EQ(j["relation_count"]["pred_gt_gold"].get<double>(), 50.0);
  EXPECT_EQ(j["per_question"].size(), 2u);
}

TEST(Labels, NormalizedForLabelLevelComparison) {
  EXPECT_EQ(normalized_labels({"Alma Mater", "almaMater", "state"}), (std::set<std::string>{"almamater", "state"}));
}
