#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "rellink/pipeline.hpp"

using namespace rellink;

namespace {

const std::string kSamples = RELLINK_SAMPLES_DIR;

KbStore sample_kb() {
  return load_kb_files(kSamples + "/kb.nt", kSamples + "/ontology.tsv", Profile::dbpedia());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<nlohmann::json> lines_of(const std::string& s) {
  std::vector<nlohmann::json> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) out.push_back(nlohmann::json::parse(line));
  return out;
}

std::string run(const KbStore& kb, const Generator& gen, const std::string& questions,
                const pipeline::LinkOptions& options = {}) {
  std::istringstream in(questions);
  std::ostringstream out;
  pipeline::run_link(kb, gen, TrigramScorer{}, in, out, options);
  return out.str();
}

}  // namespace

TEST(Records, QuestionOffsetsMustMatchMention) {
  const auto ok = records::parse_question(nlohmann::json::parse(
      R"({"question_id":1,"question":"Is Jürgen here?","entities":[{"mention":"Jürgen","start":3,"end":9,"iri":"http://x.org/J"}]})"));
  EXPECT_EQ(ok.question_id, "1");
  ASSERT_EQ(ok.entities.size(), 1u);
  EXPECT_THROW(records::parse_question(nlohmann::json::parse(
                   R"({"question_id":"q","question":"abc","entities":[{"mention":"b","start":0,"end":1,"iri":"http://x.org/B"}]})")),
               Error);
  EXPECT_THROW(records::parse_question(nlohmann::json::parse(R"({"question":"abc"})")), Error);
}

TEST(Records, ResultJsonKeyOrder) {
  LinkingResult r;
  r.relations = {Iri("http://dbpedia.org/ontology/state")};
  r.validated = true;
  r.source_rank = 3;
  r.labels = {"state"};
  EXPECT_EQ(records::result_to_json("q", r).dump(),
            R"({"question_id":"q","relations":["http://dbpedia.org/ontology/state"],"validated":true,"source_rank":3,"ask_answer":null,"labels":["state"]})");
}

TEST(Records, GoldGraphVariablesMapInOrder) {
  const auto g = records::parse_gold(nlohmann::json::parse(
      R"({"question_id":"g","relations":["dbp:almaMater","dbo:state"],"graph":[["dbr:Ben","dbp:almaMater","?x"],["?x","dbo:state","?uri"]]})"));
  ASSERT_TRUE(g.graph);
  EXPECT_EQ(g.graph->answer_var, Variable::kY);
  EXPECT_EQ(g.graph->patterns[0].to_string(), "(<dbr:Ben> <dbp:almaMater> ?x)");
  EXPECT_THROW(records::parse_gold(nlohmann::json::parse(
                   R"({"question_id":"g","relations":[],"graph":[["?a","dbo:p","?b"],["?b","dbo:q","?c"]]})")),
               EvalError);
}

TEST(Pipeline, SampleFixtureRun) {
  const auto kb = sample_kb();
  const auto gen = FixtureGenerator::from_file(kSamples + "/beams.jsonl", 50);
  const auto out = lines_of(run(kb, *gen, slurp(kSamples + "/questions.jsonl")));
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0]["relations"], (nlohmann::json{"http://dbpedia.org/ontology/owningOrganisation",
                                                 "http://dbpedia.org/ontology/manufacturer"}));
  EXPECT_TRUE(out[0]["validated"]);
  EXPECT_EQ(out[2]["ask_answer"], false);
}

TEST(Pipeline, OrderIsStableAcrossWorkerCounts) {
  const auto kb = sample_kb();
  const auto gen = FixtureGenerator::from_file(kSamples + "/beams.jsonl", 50);
  std::string questions;
  for (int i = 0; i < 60; ++i) questions += slurp(kSamples + "/questions.jsonl");
  pipeline::LinkOptions four;
  four.workers = 4;
  EXPECT_EQ(run(kb, *gen, questions), run(kb, *gen, questions, four));
}

TEST(Pipeline, BadRecordsBecomeErrorLines) {
  const auto kb = sample_kb();
  const BaselineGenerator gen(5, std::make_shared<TrigramScorer>(), kb.relation_labels());
  const auto out = lines_of(run(kb, gen,
                                "{\"question_id\":\"a\",\"question\":\"Who?\"}\n"
                                "not json\n"
                                "\n"
                                "{\"question_id\":\"b\"}\n"));
  ASSERT_EQ(out.size(), 3u);
  EXPECT_FALSE(out[0].contains("error"));
  EXPECT_TRUE(out[1]["question_id"].is_null());
  EXPECT_TRUE(out[1].contains("error"));
  EXPECT_EQ(out[2]["question_id"], "b");
  EXPECT_TRUE(out[2].contains("error"));
}

TEST(Pipeline, RemoteFailureIsPerQuestion) {
  const auto kb = sample_kb();
  const RemoteGenerator gen("http://127.0.0.1:1", 5, 0.5);
  const auto out = lines_of(run(kb, gen, slurp(kSamples + "/questions.jsonl")));
  ASSERT_EQ(out.size(), 3u);
  for (const auto& line : out) EXPECT_TRUE(line.contains("error"));
}

TEST(Pipeline, WithoutKbNothingIsValidated) {
  const auto kb = sample_kb();
  const BaselineGenerator gen(10, std::make_shared<TrigramScorer>(), kb.relation_labels());
  pipeline::LinkOptions options;
  options.without_kb = true;
  const auto out = lines_of(run(kb, gen, slurp(kSamples + "/questions.jsonl"), options));
  ASSERT_EQ(out.size(), 3u);
  for (const auto& line : out) EXPECT_FALSE(line["validated"]);
}

TEST(Pipeline, EmptyInputEmptyOutput) {
  const auto kb = sample_kb();
  const BaselineGenerator gen(10);
  EXPECT_EQ(run(kb, gen, ""), "");
}

TEST(Eval, SampleStrictAndRelaxed) {
  const auto kb = sample_kb();
  const auto gen = FixtureGenerator::from_file(kSamples + "/beams.jsonl", 50);
  const auto preds = run(kb, *gen, slurp(kSamples + "/questions.jsonl"));
  std::istringstream p1(preds), g1(slurp(kSamples + "/gold.jsonl"));
  const auto strict = pipeline::run_eval(p1, g1, pipeline::EvalMode::kStrict, &kb);
  EXPECT_NEAR(strict.macro.f1, (1.0 + 0.5 + 1.0) / 3.0, 1e-12);
  std::istringstream p2(preds), g2(slurp(kSamples + "/gold.jsonl"));
  const auto relaxed = pipeline::run_eval(p2, g2, pipeline::EvalMode::kRelaxed, &kb);
  EXPECT_NEAR(relaxed.macro.f1, 1.0, 1e-12);
  std::istringstream p3(preds), g3(slurp(kSamples + "/gold.jsonl"));
  const auto labels = pipeline::run_eval(p3, g3, pipeline::EvalMode::kLabel, &kb);
  EXPECT_NEAR(labels.macro.f1, 1.0, 1e-12);
}

TEST(Eval, MismatchedIdsListEveryMissingOne) {
  std::istringstream preds(R"({"question_id":"a","relations":[]})"
                           "\n"
                           R"({"question_id":"z","relations":[]})");
  std::istringstream gold(R"({"question_id":"a","relations":["dbo:x"]})"
                          "\n"
                          R"({"question_id":"b","relations":["dbo:y"]})");
  try {
    pipeline::run_eval(preds, gold, pipeline::EvalMode::kStrict);
    FAIL();
  } catch (const EvalError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("prediction for b"), std::string::npos);
    EXPECT_NE(msg.find("gold for z"), std::string::npos);
  }
}

TEST(Eval, PredictionsEqualToGoldScoreOne) {
  std::istringstream preds(R"({"question_id":"a","relations":["http://dbpedia.org/ontology/x"]})");
  std::istringstream gold(R"({"question_id":"a","relations":["dbo:x"]})");
  EXPECT_DOUBLE_EQ(pipeline::run_eval(preds, gold, pipeline::EvalMode::kStrict).macro.f1, 1.0);
}
