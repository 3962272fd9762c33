#include <sstream>

#include <gtest/gtest.h>

#include "rellink/config.hpp"
#include "rellink/ntriples.hpp"
#include "rellink/term.hpp"
#include "rellink/text.hpp"

using namespace rellink;

TEST(Text, TokenCountingIsWhitespaceBased) {
  EXPECT_EQ(text::count_tokens(""), 0u);
  EXPECT_EQ(text::count_tokens("  a  b\tc\n"), 3u);
  EXPECT_EQ(text::count_tokens("[x | y |]"), 4u);
}

TEST(Text, LabelNormalizationKeepsLowercaseAlphanumerics) {
  EXPECT_EQ(text::normalize_label("owningOrganisation"), "owningorganisation");
  EXPECT_EQ(text::normalize_label("Owning organisation"), "owningorganisation");
  EXPECT_EQ(text::normalize_label("P-31!"), "p31");
}

TEST(Text, LabelTokensSplitCamelCase) {
  EXPECT_EQ(text::label_tokens("placeOfBurial"), (std::vector<std::string>{"place", "of", "burial"}));
  EXPECT_EQ(text::label_tokens("birth place"), (std::vector<std::string>{"birth", "place"}));
}

TEST(Text, Utf8OffsetsCountCodePoints) {
  const std::string s = "Wer ist Jürgen Klopp?";
  EXPECT_EQ(text::utf8_length(s), 21u);
  EXPECT_EQ(text::utf8_substr(s, 8, 14), "Jürgen");
}

TEST(Iri, RejectsRelativeAndMalformed) {
  EXPECT_NO_THROW(Iri("http://dbpedia.org/ontology/state"));
  EXPECT_NO_THROW(Iri("dbo:state"));
  EXPECT_THROW(Iri("state"), Error);
  EXPECT_THROW(Iri("http://x/a b"), Error);
  EXPECT_THROW(Iri(":x"), Error);
}

TEST(Namespaces, LongestBaseWinsForStatementPrefixes) {
  const auto ns = Profile::wikidata().namespaces;
  auto ps = ns.split("http://www.wikidata.org/prop/statement/P176");
  ASSERT_TRUE(ps);
  EXPECT_EQ(ps->first, "ps");
  EXPECT_EQ(ps->second, "P176");
  auto p = ns.split("http://www.wikidata.org/prop/P176");
  ASSERT_TRUE(p);
  EXPECT_EQ(p->first, "p");
  EXPECT_EQ(ns.expand("pq:P580"), "http://www.wikidata.org/prop/qualifier/P580");
  EXPECT_EQ(ns.local_name("wdt:P31"), "P31");
}

TEST(Namespaces, UnknownPrefixIsLeftAlone) {
  const auto ns = Profile::dbpedia().namespaces;
  EXPECT_EQ(ns.expand("foo:bar"), "foo:bar");
  EXPECT_EQ(ns.expand("http://example.org/x"), "http://example.org/x");
  EXPECT_EQ(ns.local_name("http://example.org/a#b"), "b");
}

TEST(Profile, SameIriComparesExpandedForms) {
  const auto p = Profile::dbpedia();
  EXPECT_TRUE(p.same_iri("dbo:state", "http://dbpedia.org/ontology/state"));
  EXPECT_FALSE(p.same_iri("dbo:state", "dbp:state"));
  EXPECT_TRUE(p.is_relation_namespace("http://dbpedia.org/property/state"));
  EXPECT_FALSE(p.is_relation_namespace("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"));
}

TEST(NTriples, ParsesIrisLiteralsAndBlanks) {
  auto t = ntriples::parse_line(R"(<http://a/s> <http://a/p> "x \"y\""@en .)", 1);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->object.kind, TermKind::kLiteral);
  EXPECT_EQ(t->object.value, R"("x \"y\""@en)");
  auto b = ntriples::parse_line("_:b1 <http://a/p> <http://a/o> .", 2);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->subject.kind, TermKind::kBlank);
  EXPECT_FALSE(ntriples::parse_line("   # comment", 3));
  EXPECT_FALSE(ntriples::parse_line("", 4));
}

TEST(NTriples, ErrorsCarryLineNumbers) {
  std::istringstream in("<http://a/s> <http://a/p> <http://a/o> .\n<http://a/s> <http://a/p> <http://a/o>\n");
  try {
    ntriples::parse(in, [](Triple, std::size_t) {});
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ntriples::parse_line("<http://a/s> <http://a/p> \"open .", 1), LoadError);
  EXPECT_THROW(ntriples::parse_line("<http://a/s> <http://a/p> <http://a/o> . extra", 1), LoadError);
  EXPECT_THROW(ntriples::parse_line("<http://a/s> <http://a/p", 1), LoadError);
}

TEST(Config, ParsesKeyValuesAndAppliesProfileOverrides) {
  std::istringstream in(
      "# comment\nprofile = wikidata\nprefix.ex = http://example.org/\n"
      "direct_only_properties = P31, P279, P17\n");
  const auto cfg = KeyValueConfig::parse(in);
  const auto p = profile_from_config(cfg);
  EXPECT_TRUE(p.is_wikidata());
  EXPECT_EQ(p.namespaces.expand("ex:a"), "http://example.org/a");
  EXPECT_EQ(p.direct_only_properties, (std::vector<std::string>{"P31", "P279", "P17"}));
  const auto forced = profile_from_config(cfg, ProfileKind::kDbpedia);
  EXPECT_FALSE(forced.is_wikidata());
}

TEST(Config, RejectsLinesWithoutEquals) {
  std::istringstream in("profile dbpedia\n");
  EXPECT_THROW(KeyValueConfig::parse(in), ConfigError);
  std::istringstream bad("profile = freebase\n");
  EXPECT_THROW(profile_from_config(KeyValueConfig::parse(bad)), ConfigError);
}
