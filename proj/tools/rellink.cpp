#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rellink/rellink.hpp"

namespace {

using namespace rellink;

struct KbArgs {
  std::string kb;
  std::string ontology;
  std::string profile;
  std::string config;
};

void add_kb_options(CLI::App& cmd, KbArgs& args, bool required) {
  auto* kb = cmd.add_option("--kb", args.kb, "N-Triples knowledge base")->check(CLI::ExistingFile);
  if (required) kb->required();
  cmd.add_option("--ontology", args.ontology, "ontology TSV (subclass / count / label records)")
      ->check(CLI::ExistingFile);
  cmd.add_option("--profile", args.profile, "dbpedia or wikidata (overrides the config file)")
      ->check(CLI::IsMember({"dbpedia", "wikidata"}));
  cmd.add_option("--config", args.config, "key = value profile configuration")->check(CLI::ExistingFile);
}

Profile resolve_profile(const KbArgs& args) {
  std::optional<ProfileKind> kind;
  if (!args.profile.empty()) kind = parse_profile_kind(args.profile);
  const auto cfg = args.config.empty() ? KeyValueConfig{} : KeyValueConfig::load(args.config);
  return profile_from_config(cfg, kind);
}

KbStore load_store(const KbArgs& args) {
  return load_kb_files(args.kb, args.ontology, resolve_profile(args));
}

struct LinkArgs {
  KbArgs kb;
  std::string questions = "-";
  std::string output = "-";
  std::string generator = "baseline";
  std::string fixtures;
  std::string endpoint;
  double timeout = 30.0;
  std::size_t beams = 50;
  std::size_t ask_beams = 10;
  std::size_t budget = kDefaultBudget;
  std::size_t max_relations = 0;
  std::size_t workers = 1;
  bool without_kb = false;
  std::string word_vectors;
};

int cmd_ingest(const KbArgs& args) {
  const auto kb = load_store(args);
  const auto s = pipeline::ingest_stats(kb);
  std::cout << "triples\t" << s.triples << "\n"
            << "predicates\t" << s.predicates << "\n"
            << "lexicon_labels\t" << s.lexicon_labels << "\n"
            << "classes\t" << s.classes << "\n"
            << "statements\t" << s.statements << "\n";
  return 0;
}

int cmd_link(const LinkArgs& args) {
  const auto kb = load_store(args.kb);

  std::shared_ptr<const RelationScorer> scorer;
  if (args.word_vectors.empty()) {
    scorer = std::make_shared<TrigramScorer>();
  } else {
    scorer = std::make_shared<WordVectorScorer>(WordVectorScorer::load_file(args.word_vectors));
  }

  GeneratorConfig gen;
  gen.kind = parse_generator_kind(args.generator);
  gen.beam_width = args.beams;
  gen.fixture_path = args.fixtures;
  gen.endpoint = args.endpoint;
  gen.timeout_seconds = args.timeout;
  if (gen.kind == GeneratorKind::kFixture && gen.fixture_path.empty()) {
    throw ConfigError("--generator fixture needs --fixtures");
  }
  if (gen.kind == GeneratorKind::kRemote && gen.endpoint.empty()) {
    throw ConfigError("--generator remote needs --endpoint (or RELLINK_ENDPOINT)");
  }
  const auto generator = make_generator(gen, scorer, kb.relation_labels());

  pipeline::LinkOptions options;
  options.budget = args.budget;
  options.max_relations = args.max_relations == 0 ? kUnlimitedRelations : args.max_relations;
  options.link.beam_n = args.beams;
  options.link.ask_n = args.ask_beams;
  options.without_kb = args.without_kb;
  options.workers = args.workers;

  std::ifstream qfile;
  std::istream* in = &std::cin;
  if (args.questions != "-") {
    qfile.open(args.questions);
    if (!qfile) throw ConfigError("cannot read " + args.questions);
    in = &qfile;
  }
  std::ofstream ofile;
  std::ostream* out = &std::cout;
  if (args.output != "-") {
    ofile.open(args.output);
    if (!ofile) throw ConfigError("cannot write " + args.output);
    out = &ofile;
  }
  pipeline::run_link(kb, *generator, *scorer, *in, *out, options);
  return 0;
}

struct EvalArgs {
  KbArgs kb;
  std::string predictions;
  std::string gold;
  std::string mode = "strict";
  bool overlap = false;
  bool json = false;
  std::string system = "rellink";
};

int cmd_eval(const EvalArgs& args) {
  const auto mode = pipeline::parse_eval_mode(args.mode);
  std::optional<KbStore> kb;
  if (!args.kb.kb.empty()) kb = load_store(args.kb);
  std::ifstream preds(args.predictions), gold(args.gold);
  if (!preds) throw ConfigError("cannot read " + args.predictions);
  if (!gold) throw ConfigError("cannot read " + args.gold);
  const auto report = pipeline::run_eval(preds, gold, mode, kb ? &*kb : nullptr,
                                         args.overlap ? RelaxMode::kOverlappingAnswers : RelaxMode::kEqualAnswers);
  if (args.json) {
    std::cout << report_to_json(report).dump(2) << "\n";
  } else {
    std::cout << report_to_table(report, args.system);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relation linking over a knowledge base"};
  app.require_subcommand(1);

  KbArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "load a KB and print index statistics");
  add_kb_options(*ingest, ingest_args, true);

  LinkArgs link_args;
  auto* link = app.add_subcommand("link", "link questions to KB relations (JSONL in, JSONL out)");
  add_kb_options(*link, link_args.kb, true);
  link->add_option("--questions", link_args.questions, "questions JSONL ('-' for stdin)");
  link->add_option("--output", link_args.output, "results JSONL ('-' for stdout)");
  link->add_option("--generator", link_args.generator, "sequence generator")
      ->check(CLI::IsMember({"fixture", "remote", "baseline"}));
  link->add_option("--fixtures", link_args.fixtures, "beam fixture JSONL for --generator fixture")
      ->check(CLI::ExistingFile);
  link->add_option("--endpoint", link_args.endpoint, "generation service base URL")->envname("RELLINK_ENDPOINT");
  link->add_option("--timeout", link_args.timeout, "remote generation timeout in seconds")
      ->envname("RELLINK_TIMEOUT")
      ->check(CLI::PositiveNumber);
  link->add_option("--beams", link_args.beams, "beam width N")->check(CLI::PositiveNumber);
  link->add_option("--ask-beams", link_args.ask_beams, "beams searched for ASK questions")
      ->check(CLI::PositiveNumber);
  link->add_option("--budget", link_args.budget, "encoder input budget in tokens")->check(CLI::PositiveNumber);
  link->add_option("--max-relations", link_args.max_relations, "relations kept per entity (0 = all)");
  link->add_option("--workers", link_args.workers, "parallel workers")->check(CLI::PositiveNumber);
  link->add_flag("--wo-kb", link_args.without_kb, "question-only input, no KB validation");
  link->add_option("--word-vectors", link_args.word_vectors, "word2vec text vectors for relation ranking")
      ->check(CLI::ExistingFile);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "score predictions against gold relations");
  add_kb_options(*eval, eval_args.kb, false);
  eval->add_option("--predictions", eval_args.predictions, "results JSONL from link")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--gold", eval_args.gold, "gold JSONL")->required()->check(CLI::ExistingFile);
  eval->add_option("--eval-mode", eval_args.mode, "strict, relaxed or label-level")
      ->check(CLI::IsMember({"strict", "relaxed", "label-level"}));
  eval->add_flag("--overlap", eval_args.overlap, "relaxed mode accepts overlapping answer sets");
  eval->add_flag("--json", eval_args.json, "print the report as JSON");
  eval->add_option("--system", eval_args.system, "row name in the table report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return cmd_ingest(ingest_args);
    if (*link) return cmd_link(link_args);
    if (*eval) return cmd_eval(eval_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
