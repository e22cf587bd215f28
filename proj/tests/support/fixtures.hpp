#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "assograph/artifact.hpp"
#include "assograph/cpcl.hpp"
#include "assograph/graph.hpp"

namespace fixture {

using assograph::Edge;
using assograph::NodeId;
using assograph::ValuedGraph;

/// a-b 0.9, b-c 0.5, c-d 0.8 with a..d = 0..3.
inline ValuedGraph path4() {
  return ValuedGraph({0, 1, 2, 3}, {{0, 1, 0.9}, {1, 2, 0.5}, {2, 3, 0.8}});
}

inline ValuedGraph tie_triangle() {
  return ValuedGraph({0, 1, 2}, {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5}});
}

/// Center 0; leaves hi=1 (0.9), mid=2 (0.5), lo=3 (0.3).
inline ValuedGraph star3() {
  return ValuedGraph({0, 1, 2, 3}, {{0, 1, 0.9}, {0, 2, 0.5}, {0, 3, 0.3}});
}

/// GraphArtifact over `g` with unit labels taken from `labels[id]`.
inline assograph::GraphArtifact artifact(const ValuedGraph& g, const std::vector<std::string>& labels,
                                         double s = 0.0) {
  assograph::GraphArtifact a;
  a.mode = assograph::GraphMode::coauthor;
  a.graph = assograph::ThresholdedGraph::from_retained(g, s);
  for (NodeId v : g.vertices()) {
    a.units.push_back({v, assograph::UnitKind::author, labels.at(v), {"D" + std::to_string(v)}});
  }
  return a;
}

inline assograph::ResultArtifact path4_result(std::optional<int> levels) {
  return assograph::cluster_artifact(artifact(path4(), {"a", "b", "c", "d"}), levels);
}

/// Three-document corpus records: D1={A,B}, D2={A,B,C}, D3={A,C}.
inline std::string three_doc_records() {
  return R"({"id":"D1","title":"first","authors":["Alpha, A.","Beta, B."],"year":2001,"keywords":["chordal graph"]}
{"id":"D2","title":"second","authors":["Alpha, A.","Beta, B.","Gamma, C."],"year":2002,"keywords":["weakly chordal graph"]}
{"id":"D3","title":"third","authors":["A. Alpha","Gamma, C."],"year":2002,"keywords":["interval order"]}
)";
}

// ---------------------------------------------------------------------------
// Random generators

/// Random graph on n vertices with ids 1, 4, 7, ... (deliberately not
/// 0..n-1). Distinct values are drawn without replacement from a grid.
inline ValuedGraph random_graph(std::mt19937_64& rng, std::size_t n, double density, bool distinct,
                                std::size_t palette = 5) {
  std::vector<NodeId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<NodeId>(3 * i + 1);
  std::bernoulli_distribution keep(density);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (keep(rng)) pairs.emplace_back(ids[i], ids[j]);
    }
  }
  std::vector<double> values;
  if (distinct) {
    const std::size_t grid = pairs.size() * 4 + 1;
    std::vector<std::size_t> slots(grid);
    std::iota(slots.begin(), slots.end(), 1);
    std::shuffle(slots.begin(), slots.end(), rng);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      values.push_back(static_cast<double>(slots[k]) / static_cast<double>(grid + 1));
    }
  } else {
    std::uniform_int_distribution<std::size_t> pick(1, palette);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      values.push_back(static_cast<double>(pick(rng)) / static_cast<double>(palette));
    }
  }
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < pairs.size(); ++k) edges.push_back({pairs[k].first, pairs[k].second, values[k]});
  return ValuedGraph(ids, edges);
}

/// The same graph rebuilt from shuffled vertex and edge lists with swapped
/// endpoints.
inline ValuedGraph permuted(const ValuedGraph& g, std::mt19937_64& rng) {
  std::vector<NodeId> vs(g.vertices().begin(), g.vertices().end());
  std::vector<Edge> es(g.edges().begin(), g.edges().end());
  std::shuffle(vs.begin(), vs.end(), rng);
  std::shuffle(es.begin(), es.end(), rng);
  for (Edge& e : es) {
    if (rng() & 1) std::swap(e.u, e.v);
  }
  return ValuedGraph(vs, es);
}

inline std::vector<std::vector<NodeId>> random_hyperedges(std::mt19937_64& rng, std::size_t max_edges,
                                                          std::size_t max_units) {
  std::uniform_int_distribution<std::size_t> edge_count(1, max_edges);
  std::uniform_int_distribution<std::size_t> unit_count(1, max_units);
  const std::size_t units = unit_count(rng);
  const std::size_t m = edge_count(rng);
  std::uniform_int_distribution<NodeId> unit(0, static_cast<NodeId>(units - 1));
  std::uniform_int_distribution<std::size_t> size(0, units + 1);
  std::vector<std::vector<NodeId>> out(m);
  for (auto& h : out) {
    const std::size_t k = size(rng);
    for (std::size_t i = 0; i < k; ++i) h.push_back(unit(rng));  // duplicates on purpose
  }
  return out;
}

// ---------------------------------------------------------------------------
// Synthetic bibliographic corpus

inline std::string synthetic_surname(std::size_t i) {
  static const char* syllables[] = {"ka", "lo", "mi", "ra", "ne", "to", "su", "vi", "do", "be",
                                    "ga", "pe", "zu", "fo", "hi", "ja", "qui", "xe", "wo", "ly"};
  std::string s;
  std::size_t x = i;
  do {
    s += syllables[x % 20];
    x /= 20;
  } while (x > 0);
  s += syllables[(i * 7 + 3) % 20];
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

/// `documents` records over `authors` distinct people grouped into teams of
/// ~8; most papers stay inside a team, some bridge two. Every author appears
/// at least once. Output is line-delimited JSON ready for parse_corpus.
inline std::string synthetic_records(std::size_t documents, std::size_t authors, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t team = 8;
  std::uniform_int_distribution<std::size_t> team_size(1, 5);
  std::uniform_int_distribution<std::size_t> any_author(0, authors - 1);
  std::uniform_int_distribution<int> year(1994, 2006);
  std::bernoulli_distribution bridge(0.15);
  std::size_t next_unseen = 0;
  std::ostringstream out;
  for (std::size_t d = 0; d < documents; ++d) {
    std::set<std::size_t> picked;
    // Guarantee coverage: feed unseen authors first, two or three per paper.
    const std::size_t remaining_docs = documents - d;
    const std::size_t unseen = authors - next_unseen;
    std::size_t fresh = (unseen + remaining_docs - 1) / remaining_docs;
    while (fresh-- > 0 && next_unseen < authors) picked.insert(next_unseen++);
    const std::size_t anchor = picked.empty() ? any_author(rng) : *picked.begin();
    const std::size_t base = (anchor / team) * team;
    std::uniform_int_distribution<std::size_t> mate(base, std::min(authors, base + team) - 1);
    const std::size_t members = std::min(authors, base + team) - base;
    const std::size_t k = std::min(team_size(rng), members);
    while (picked.size() < k) picked.insert(mate(rng));
    if (bridge(rng)) picked.insert(any_author(rng));
    nlohmann::json authors_json = nlohmann::json::array();
    for (std::size_t a : picked) {
      const char initial = static_cast<char>('A' + a % 26);
      const char second = static_cast<char>('A' + (a / 26) % 26);
      if (a % 2 == 0) {
        authors_json.push_back(synthetic_surname(a) + ", " + initial + ". " + second + ".");
      } else {
        authors_json.push_back(std::string(1, initial) + ". " + second + ". " + synthetic_surname(a));
      }
    }
    nlohmann::json rec{{"id", "S" + std::to_string(d)},
                       {"title", "Synthetic paper " + std::to_string(d)},
                       {"authors", authors_json},
                       {"year", year(rng)}};
    out << rec.dump() << "\n";
  }
  return out.str();
}

}  // namespace fixture
