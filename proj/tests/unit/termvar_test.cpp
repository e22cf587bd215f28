#include <sstream>

#include "doctest.h"

#include "assograph/error.hpp"
#include "assograph/termvar.hpp"

using namespace assograph;

namespace {

Document doc_with(std::optional<std::vector<std::string>> keywords, std::optional<std::string> abstract) {
  Document d;
  d.id = "d1";
  d.keywords = std::move(keywords);
  d.abstract_text = std::move(abstract);
  return d;
}

std::vector<std::vector<std::string>> token_lists(const std::vector<TermForm>& terms) {
  std::vector<std::vector<std::string>> out;
  for (const auto& t : terms) out.push_back(t.tokens);
  return out;
}

std::vector<Term> make_terms(std::vector<std::vector<std::string>> lists) {
  std::vector<Term> out;
  UnitId id = 0;
  for (auto& l : lists) out.push_back({id++, std::move(l), {}});
  return out;
}

}  // namespace

TEST_CASE("keyword extraction tokenizes and lowercases") {
  const auto terms = extract_terms(doc_with(std::vector<std::string>{"Chordal Graph"}, std::nullopt),
                                   TermMode::keywords);
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].tokens == std::vector<std::string>{"chordal", "graph"});
  CHECK(terms[0].surface_forms == std::vector<std::string>{"Chordal Graph"});

  CHECK(extract_terms(doc_with(std::vector<std::string>{}, std::nullopt), TermMode::keywords).empty());
}

TEST_CASE("keyword extraction merges duplicates by token list") {
  const auto terms = extract_terms(
      doc_with(std::vector<std::string>{"interval order", "Interval  Order", "poset"}, std::nullopt),
      TermMode::keywords);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].tokens == std::vector<std::string>{"interval", "order"});
  CHECK(terms[0].surface_forms.size() == 2);
}

TEST_CASE("naive_np keeps maximal non-stopword runs") {
  const StopwordSet we{"we"};
  const auto terms =
      extract_terms(doc_with(std::nullopt, "We study weakly chordal graphs."), TermMode::naive_np, we);
  CHECK(token_lists(terms) == std::vector<std::vector<std::string>>{{"study", "weakly", "chordal", "graphs"}});

  const auto split = extract_terms(doc_with(std::nullopt, "Petri nets, and 3 graph classes of interval orders"),
                                   TermMode::naive_np);
  CHECK(token_lists(split) == std::vector<std::vector<std::string>>{
                                  {"graph", "classes"}, {"interval", "orders"}, {"petri", "nets"}});
}

TEST_CASE("naive_np chunks long runs and keeps in-word hyphens") {
  const auto terms =
      extract_terms(doc_with(std::nullopt, "alpha beta gamma delta epsilon zeta eta theta; well-known x2 sets"),
                    TermMode::naive_np, StopwordSet{});
  CHECK(token_lists(terms) == std::vector<std::vector<std::string>>{
                                  {"alpha", "beta", "gamma", "delta", "epsilon", "zeta"},
                                  {"eta", "theta"},
                                  {"sets"},
                                  {"well-known"}});
}

TEST_CASE("extraction requires its source field") {
  try {
    extract_terms(doc_with(std::nullopt, std::nullopt), TermMode::keywords);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition);
    CHECK(std::string(e.what()).find("d1") != std::string::npos);
    CHECK(std::string(e.what()).find("keywords") != std::string::npos);
  }
  CHECK_THROWS_AS(extract_terms(doc_with(std::vector<std::string>{}, std::nullopt), TermMode::naive_np),
                  Error);
}

TEST_CASE("suffix table") {
  CHECK(strip_suffix("graphs") == "graph");
  CHECK(strip_suffix("families") == "family");
  CHECK(strip_suffix("boxes") == "box");
  CHECK(strip_suffix("matches") == "match");
  CHECK(strip_suffix("classes") == "class");
  CHECK(strip_suffix("class") == "class");
  CHECK(strip_suffix("corpus") == "corpus");
  CHECK(strip_suffix("analysis") == "analysis");
  CHECK(strip_suffix("order") == "order");
}

TEST_CASE("variant kinds") {
  SynonymLexicon lex;
  lex.add("net", "network");
  const auto terms = make_terms({{"petri", "net"},              // 0
                                 {"petri-net"},                 // 1
                                 {"petri", "nets"},             // 2
                                 {"petri", "network"},          // 3
                                 {"chordal", "graph"},          // 4
                                 {"weakly", "chordal", "graph"},// 5
                                 {"graph"}});                   // 6
  const auto links = find_variants(terms, lex);
  auto kind_of = [&](UnitId u, UnitId v) -> std::optional<VariantKind> {
    for (const auto& l : links) {
      if (l.u == u && l.v == v) return l.kind;
    }
    return std::nullopt;
  };
  CHECK(kind_of(0, 1) == VariantKind::spelling);
  CHECK(kind_of(0, 2) == VariantKind::morphological);
  CHECK(kind_of(0, 3) == VariantKind::synonym);
  CHECK(kind_of(4, 5) == VariantKind::expansion);
  CHECK(kind_of(4, 6) == VariantKind::expansion);
  CHECK(kind_of(5, 6) == VariantKind::expansion);
  CHECK(kind_of(0, 4) == std::nullopt);
  CHECK(std::is_sorted(links.begin(), links.end()));
  for (const auto& l : links) CHECK(l.u < l.v);
}

TEST_CASE("expansion requires a shared head") {
  const auto links = find_variants(make_terms({{"chordal", "graph"}, {"chordal", "graph", "theory"}}), {});
  CHECK(links.empty());
}

TEST_CASE("synonym lexicon file format") {
  std::istringstream in("# comment\nnet\tnetwork\n\nCar\tAutomobile\n");
  const SynonymLexicon lex = SynonymLexicon::load(in);
  CHECK(lex.size() == 2);
  REQUIRE(lex.synonyms_of("car").size() == 1);
  CHECK(lex.synonyms_of("car")[0] == "automobile");
  CHECK(lex.synonyms_of("network")[0] == "net");
  std::istringstream bad("only-one-column\n");
  CHECK_THROWS_AS(SynonymLexicon::load(bad), Error);
}

TEST_CASE("corpus-wide extraction registers terms after authors") {
  const Corpus raw = parse_corpus_text(
      R"({"id":"D1","authors":["Alpha, A."],"keywords":["chordal graph"]}
{"id":"D2","authors":["Beta, B."],"keywords":["weakly chordal graph","Chordal graph"]}
)");
  const Corpus c = extract_corpus_terms(raw, TermMode::keywords);
  CHECK(c.author_count() == 2);
  CHECK(c.term_count() == 2);
  REQUIRE(c.terms());
  CHECK(c.terms()->terms[0].id == 2);
  CHECK(c.terms()->terms[0].form() == "chordal graph");
  CHECK(c.terms()->variants == std::vector<VariantLink>{{2, 3, VariantKind::expansion}});
  CHECK(c.documents()[1].term_units == std::vector<UnitId>{2, 3});
  CHECK(corpus_stats(c).terms == 2);

  const Corpus partial = parse_corpus_text(R"({"id":"D1","authors":[],"keywords":["x"]}
{"id":"D2","authors":[]})");
  CHECK_THROWS_AS(extract_corpus_terms(partial, TermMode::keywords), Error);
  CHECK(extract_corpus_terms(partial, TermMode::keywords, {}, default_stopwords(), true).term_count() == 1);
}
