// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "httplib.h"
#include "json.hpp"

#include "assograph/analysis.hpp"
#include "assograph/artifact.hpp"
#include "assograph/assoc_graph.hpp"
#include "assograph/cpcl.hpp"
#include "assograph/view.hpp"
#include "../support/cpcl_checks.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "../support/test_server.hpp"

using namespace assograph;
using Clock = std::chrono::steady_clock;
using nlohmann::json;

namespace {

/// Collects the first failure message of a criterion.
struct Check {
  std::string failure;
  void expect(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
  }
  bool ok() const { return failure.empty(); }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Check equivalence_oracle() {
  Check c;
  std::mt19937_64 rng(20240601);
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    const auto lists = fixture::random_hyperedges(rng, 12, 8);
    std::vector<Hyperedge> edges;
    for (std::size_t i = 0; i < lists.size(); ++i) edges.push_back({std::to_string(i), lists[i]});
    const ValuedGraph g = derive_graph(Hypergraph(edges));
    const auto expected = oracle::equivalence_by_counting(lists);
    c.expect(g.edges().size() == expected.size(), "edge set size differs in trial " + std::to_string(trial));
    for (const Edge& e : g.edges()) {
      const auto it = expected.find({e.u, e.v});
      c.expect(it != expected.end(), "unexpected edge");
      if (it != expected.end()) c.expect(std::abs(it->second - e.value) <= 1e-12, "value differs");
    }
  }
  const double elapsed = seconds_since(t0);
  c.expect(elapsed < 5.0, "took " + std::to_string(elapsed) + " s");
  return c;
}

Check cpcl_traces() {
  using Clusters = std::vector<std::vector<NodeId>>;
  Check c;
  const ClusteringResult path = cpcl(fixture::path4());
  c.expect(local_max_edges(fixture::path4()) == std::vector<VertexPair>{{0, 1}, {2, 3}}, "path S");
  c.expect(path.level_count() == 2, "path level count");
  if (path.level_count() == 2) {
    c.expect(path.level(1).clusters == Clusters{{0, 1}, {2, 3}}, "path level 1 clusters");
    c.expect(path.reduced_graph(1).edges().size() == 1 && path.reduced_graph(1).edges()[0].value == 0.5,
             "path reduced edge");
    c.expect(path.base_members({2, 0}).size() == 4, "path level 2 single cluster");
    c.expect(path.termination() == Termination::no_edges, "path termination");
  }
  const ClusteringResult capped = cpcl(fixture::path4(), 1);
  c.expect(capped.level_count() == 1 && capped.level(1).clusters == Clusters{{0, 1}, {2, 3}} &&
               capped.reduced_graph(1).edges().size() == 1 &&
               capped.reduced_graph(1).edges()[0].value == 0.5,
           "path max_levels=1");
  const ClusteringResult tri = cpcl(fixture::tie_triangle());
  c.expect(local_max_edges(fixture::tie_triangle()).empty(), "triangle S");
  c.expect(tri.level(1).clusters == Clusters{{0}, {1}, {2}} && tri.termination() == Termination::no_merge,
           "triangle singletons");
  const ClusteringResult star = cpcl(fixture::star3(), 1);
  c.expect(star.level(1).s_edges == std::vector<VertexPair>{{0, 1}}, "star S");
  c.expect(star.level(1).clusters == Clusters{{0, 1}, {2}, {3}}, "star clusters");
  return c;
}

Check distinct_fixpoint() {
  Check c;
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<std::size_t> size(1, 40);
  std::uniform_real_distribution<double> density(0.02, 0.3);
  for (int trial = 0; trial < 100; ++trial) {
    const ValuedGraph g = fixture::random_graph(rng, size(rng), density(rng), true);
    const ClusteringResult r = cpcl(g);
    std::set<std::set<NodeId>> got;
    const int top = r.level_count();
    for (std::size_t i = 0; i < r.level(top).clusters.size(); ++i) {
      const auto m = r.base_members({top, i});
      got.insert(std::set<NodeId>(m.begin(), m.end()));
    }
    c.expect(got == oracle::components(g), "final clusters differ from components, trial " + std::to_string(trial));
    const std::string violation = oracle::check_cpcl_invariants(g, r);
    c.expect(violation.empty(), violation);
  }
  return c;
}

Check monotonicity_and_determinism() {
  Check c;
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> unit(0.0, 0.999);
  for (int trial = 0; trial < 200; ++trial) {
    const ValuedGraph g = fixture::random_graph(rng, 25, 0.25, trial % 2 == 0, 9);
    double s = unit(rng), t = unit(rng);
    if (trial % 10 == 0) s = 0.0;
    if (s > t) std::swap(s, t);
    const ThresholdedGraph gs = threshold(g, s);
    const ThresholdedGraph gt = threshold(g, t);
    for (const Edge& e : gt.graph().edges()) c.expect(gs.graph().value(e.u, e.v) == e.value, "E_t not in E_s");
    c.expect(gt.graph().vertices().size() == g.vertices().size(), "threshold dropped vertices");
  }
  for (int trial = 0; trial < 5; ++trial) {
    const std::string records = fixture::synthetic_records(200, 500, 100 + trial);
    std::vector<std::string> lines;
    std::istringstream in(records);
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    std::shuffle(lines.begin(), lines.end(), rng);
    std::string shuffled;
    for (const auto& l : lines) shuffled += l + "\n";
    auto run = [](const std::string& text, GraphMode mode, double s) {
      return serialize(cluster_artifact(build_graph_artifact(parse_corpus_text(text), mode, s), std::nullopt));
    };
    c.expect(run(records, GraphMode::coauthor, 0.0) == run(shuffled, GraphMode::coauthor, 0.0),
             "result files differ under permutation");
    c.expect(run(records, GraphMode::coauthor, 0.3) == run(shuffled, GraphMode::coauthor, 0.3),
             "thresholded result files differ under permutation");
  }
  for (int trial = 0; trial < 20; ++trial) {
    const ValuedGraph g = fixture::random_graph(rng, 30, 0.15, trial % 2 == 0);
    std::vector<std::string> labels(100);
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = "v" + std::to_string(i);
    const std::string a = serialize(cluster_artifact(fixture::artifact(g, labels), std::nullopt));
    const std::string b = serialize(cluster_artifact(fixture::artifact(fixture::permuted(g, rng), labels), std::nullopt));
    c.expect(a == b, "graph permutation changes the result file");
  }
  return c;
}

Check centrality_and_paths() {
  Check c;
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 50);
    const ValuedGraph g = fixture::random_graph(rng, size(rng), 0.12, false);
    const auto got = betweenness(g);
    const auto expected = oracle::betweenness_by_pairs(g);
    c.expect(got.size() == expected.size(), "betweenness key set");
    for (const auto& [v, score] : expected) {
      c.expect(got.contains(v) && std::abs(got.at(v) - score) <= 1e-9, "betweenness differs");
    }
  }
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<std::size_t> size(2, 8);
    const ValuedGraph g = fixture::random_graph(rng, size(rng), 0.45, trial % 2 == 0, 3);
    for (NodeId a : g.vertices()) {
      for (NodeId b : g.vertices()) {
        const auto got = strongest_path(g, a, b);
        const auto expected = oracle::best_simple_path(g, a, b);
        c.expect(got.has_value() == expected.has_value(), "path existence differs");
        if (got && expected) {
          c.expect(got->bottleneck == expected->bottleneck, "bottleneck differs");
          c.expect(got->vertices == expected->vertices, "tie-break differs");
        }
      }
    }
  }
  return c;
}

Check scale() {
  Check c;
  const std::string records = fixture::synthetic_records(1000, 2500, 939);
  const auto t0 = Clock::now();
  const Corpus corpus = parse_corpus_text(records);
  const ResultArtifact r = cluster_artifact(build_graph_artifact(corpus, GraphMode::coauthor, 0.0), std::nullopt);
  const GraphView v = make_view(r);
  const std::string gdl = export_gdl(v);
  const std::string dot = export_dot(v);
  const double elapsed = seconds_since(t0);
  c.expect(corpus.documents().size() == 1000, "document count");
  c.expect(corpus.author_count() >= 2400 && corpus.author_count() <= 2600, "author count");
  c.expect(!gdl.empty() && !dot.empty(), "exports empty");
  c.expect(elapsed < 2.0, "took " + std::to_string(elapsed) + " s");
  std::cout << "       scale: " << corpus.documents().size() << " documents, " << corpus.author_count()
            << " authors, " << r.graph.graph.graph().edge_count() << " edges, " << r.clustering.level_count()
            << " levels in " << elapsed << " s\n";
  return c;
}

Check golden_and_api() {
  Check c;
  const GraphView v = make_view(fixture::path4_result(1));
  c.expect(export_gdl(v) == read_file(std::string(ASSOGRAPH_GOLDEN_DIR) + "/path_level1.gdl"), "GDL golden");
  c.expect(export_dot(v) == read_file(std::string(ASSOGRAPH_GOLDEN_DIR) + "/path_level1.dot"), "DOT golden");

  fixture::TestServer server;
  auto http = server.client();
  auto status = [&](const httplib::Result& r, int expected, const std::string& what) {
    c.expect(r && r->status == expected,
             what + ": status " + (r ? std::to_string(r->status) : std::string("none")));
    return r && r->status == expected;
  };
  auto error_code = [](const httplib::Result& r) {
    try {
      return json::parse(r->body).at("error").at("code").get<std::string>();
    } catch (const std::exception&) {
      return std::string();
    }
  };
  auto up = http.Post("/corpora", fixture::three_doc_records(), "application/x-ndjson");
  if (!status(up, 201, "POST /corpora")) return c;
  const std::string corpus = json::parse(up->body).at("id");
  auto stats = http.Get("/corpora/" + corpus + "/stats");
  if (status(stats, 200, "stats")) {
    const json s = json::parse(stats->body);
    c.expect(s.at("documents") == 3 && s.at("authors") == 3, "stats values");
  }
  auto built = http.Post("/corpora/" + corpus + "/graphs", R"({"mode":"coauthor","threshold":0})", "application/json");
  if (!status(built, 201, "POST graphs")) return c;
  const json b = json::parse(built->body);
  c.expect(b.at("edges") == 3, "fixture graph has 3 edges");
  const std::string graph = b.at("id");
  status(http.Get("/graphs/" + graph), 200, "GET graph");
  status(http.Get("/graphs/" + graph + "/clusters/L1_0"), 200, "GET cluster");
  auto path = http.Get("/graphs/" + graph + "/paths?from=u1&to=u2");
  if (status(path, 200, "GET path")) c.expect(json::parse(path->body).at("found") == true, "path found");
  status(http.Get("/graphs/" + graph + "/centrality"), 200, "GET centrality");
  auto docs = http.Get("/corpora/" + corpus + "/units/0/documents");
  if (status(docs, 200, "GET unit documents")) {
    c.expect(json::parse(docs->body).at("documents") == json{"D1", "D2", "D3"}, "author A documents");
  }
  status(http.Get("/corpora/" + corpus + "/documents/D1"), 200, "GET document");

  struct Bad {
    std::function<httplib::Result()> call;
    int status;
    const char* code;
    const char* what;
  };
  const std::vector<Bad> errors = {
      {[&] { return http.Get("/graphs/0123456789abcdef"); }, 404, "not_found", "unknown graph"},
      {[&] { return http.Get("/corpora/0123456789abcdef/stats"); }, 404, "not_found", "unknown corpus"},
      {[&] { return http.Get("/graphs/" + graph + "/clusters/L5_5"); }, 404, "not_found", "unknown cluster"},
      {[&] { return http.Get("/graphs/" + graph + "/paths?from=u1&to=u99"); }, 404, "not_found", "unknown unit"},
      {[&] { return http.Get("/graphs/" + graph + "/paths?from=u1"); }, 400, "invalid_argument", "missing to"},
      {[&] { return http.Get("/corpora/" + corpus + "/units/77/documents"); }, 404, "not_found", "unknown unit id"},
      {[&] { return http.Get("/corpora/" + corpus + "/documents/nope"); }, 404, "not_found", "unknown document"},
      {[&] { return http.Post("/corpora", "{\"id\":\"x\",\"authors\":[]}\n{\"id\":\"x\",\"authors\":[]}", "text/plain"); },
       409, "duplicate_id", "duplicate upload"},
      {[&] { return http.Post("/corpora", "garbage", "text/plain"); }, 400, "parse_error", "malformed upload"},
      {[&] { return http.Post("/corpora/" + corpus + "/graphs", R"({"threshold":1})", "application/json"); },
       400, "invalid_argument", "threshold out of range"},
      {[&] { return http.Post("/corpora/" + corpus + "/graphs", R"({"mode":"term_author"})", "application/json"); },
       422, "precondition", "term_author without terms"},
  };
  for (const Bad& e : errors) {
    const auto r = e.call();
    if (status(r, e.status, e.what)) c.expect(error_code(r) == e.code, std::string(e.what) + ": error code");
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Check()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1 equivalence coefficient vs pair-counting oracle (200 hypergraphs, < 5 s)", equivalence_oracle},
      {"AC2 CPCL hand traces: path, all-ties triangle, star", cpcl_traces},
      {"AC3 distinct-value fixpoint equals components; level invariants hold", distinct_fixpoint},
      {"AC4 threshold monotonicity and byte-identical results under permutation", monotonicity_and_determinism},
      {"AC5 betweenness and strongest-path oracles", centrality_and_paths},
      {"AC6 1000 documents / ~2500 authors end-to-end in < 2 s", scale},
      {"AC7 golden GDL/DOT exports and HTTP API contract", golden_and_api},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check result;
    try {
      result = cr.run();
    } catch (const std::exception& e) {
      result.failure = std::string("exception: ") + e.what();
    }
    if (result.ok()) {
      std::cout << "[PASS] " << cr.name << std::endl;
    } else {
      ++failed;
      std::cout << "[FAIL] " << cr.name << " -- " << result.failure << std::endl;
    }
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
