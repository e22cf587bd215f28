#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "assograph/assoc_graph.hpp"
#include "assograph/corpus.hpp"
#include "assograph/cpcl.hpp"

namespace assograph {

/// Vertex metadata carried by graph and result files, so that they can be
/// inspected without the corpus.
struct UnitRecord {
  UnitId id = 0;
  UnitKind kind = UnitKind::author;
  std::string label;
  std::vector<std::string> documents;  // sorted by document id

  friend bool operator==(const UnitRecord&, const UnitRecord&) = default;
};

struct GraphArtifact {
  GraphMode mode = GraphMode::coauthor;
  std::string corpus_id;  // empty when not produced by the service
  ThresholdedGraph graph;
  std::vector<UnitRecord> units;  // one per vertex, sorted by id
  std::size_t ignored_variant_links = 0;

  const UnitRecord& unit(UnitId id) const;
  /// Accepts "u<id>", a bare id, an exact label, or an author name in any
  /// form normalize_author understands.
  std::optional<UnitId> find_unit(std::string_view query) const;

  friend bool operator==(const GraphArtifact& a, const GraphArtifact& b) {
    return a.mode == b.mode && a.corpus_id == b.corpus_id &&
           a.graph.threshold() == b.graph.threshold() && a.graph.graph() == b.graph.graph() &&
           a.units == b.units && a.ignored_variant_links == b.ignored_variant_links;
  }
};

/// Hypergraph -> valued graph -> (term_author: variant valuation) -> G_s.
GraphArtifact build_graph_artifact(const Corpus& c, GraphMode mode, double s);

struct ResultArtifact {
  GraphArtifact graph;
  std::optional<int> max_levels;
  ClusteringResult clustering;

  friend bool operator==(const ResultArtifact&, const ResultArtifact&) = default;
};

ResultArtifact cluster_artifact(GraphArtifact graph, std::optional<int> max_levels);

// Line-delimited JSON files. Each line is one object with a "type" member;
// the first line is a header naming the format and version.

void write_corpus(std::ostream& out, const Corpus& c);
Corpus read_corpus(std::istream& in);

void write_graph(std::ostream& out, const GraphArtifact& g);
GraphArtifact read_graph(std::istream& in);

void write_result(std::ostream& out, const ResultArtifact& r);
ResultArtifact read_result(std::istream& in);

std::string serialize(const Corpus& c);
std::string serialize(const GraphArtifact& g);
std::string serialize(const ResultArtifact& r);

/// First 16 hex digits of the SHA-256 of `bytes`.
std::string content_digest(std::string_view bytes);

/// Write to a sibling temporary file, then rename over `path`.
void write_file_atomic(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

}  // namespace assograph
