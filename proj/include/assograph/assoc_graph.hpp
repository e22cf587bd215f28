#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "assograph/corpus.hpp"
#include "assograph/graph.hpp"

namespace assograph {

enum class GraphMode { coauthor, term_author };

std::string_view to_string(GraphMode mode) noexcept;
GraphMode parse_graph_mode(std::string_view s);

/// Default association threshold per mode (0 keeps every co-author tie; 0.8
/// for term-author maps).
double default_threshold(GraphMode mode) noexcept;

struct Hyperedge {
  std::string doc_id;
  std::vector<UnitId> units;  // sorted, unique

  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

/// One hyper-edge per document, in corpus order. Empty and single-unit
/// hyper-edges are kept; they simply contribute no pairs.
class Hypergraph {
 public:
  Hypergraph() = default;
  /// Units inside each hyper-edge are deduplicated (presence, not multiplicity).
  explicit Hypergraph(std::vector<Hyperedge> edges);

  std::span<const Hyperedge> edges() const noexcept { return edges_; }
  const std::map<UnitId, std::uint32_t>& occurrence() const noexcept { return occurrence_; }
  std::uint32_t occurrence_of(UnitId u) const noexcept;

 private:
  std::vector<Hyperedge> edges_;
  std::map<UnitId, std::uint32_t> occurrence_;
};

using TermsPerDocument = std::map<std::string, std::vector<UnitId>, std::less<>>;

/// coauthor: hyper-edge = author units of the document.
/// term_author: authors + terms(d) + every term directly variant-linked to a
/// term of d. terms_per_doc must cover every document.
Hypergraph build_hypergraph(const Corpus& c, GraphMode mode, const TermsPerDocument& terms_per_doc,
                            std::span<const VariantLink> variants);

/// Same, taking terms and variants from the corpus' term layer. term_author
/// mode requires extraction to have run.
Hypergraph build_hypergraph(const Corpus& c, GraphMode mode);

/// n_uv^2 / (n_u * n_v): product of the two conditional co-occurrence
/// probabilities. Requires n_u >= n_uv >= 1 and n_v >= n_uv.
double equivalence_coefficient(std::uint64_t n_u, std::uint64_t n_v, std::uint64_t n_uv);

/// Vertices are all units occurring in some hyper-edge; edges are exactly the
/// co-occurring pairs valued by the equivalence coefficient.
ValuedGraph derive_graph(const Hypergraph& h);

struct VariantValuation {
  ValuedGraph graph;
  std::size_t ignored_links = 0;  // links whose pair is not an edge of the input
};

/// Sets every edge joining two variant-linked terms to 1. Never adds edges.
VariantValuation apply_variant_valuation(const ValuedGraph& g, std::span<const VariantLink> variants);

/// G_s: the base graph's vertices with edges valued strictly above s.
class ThresholdedGraph {
 public:
  ThresholdedGraph() = default;
  ThresholdedGraph(const ValuedGraph& base, double s);

  double threshold() const noexcept { return threshold_; }
  const ValuedGraph& graph() const noexcept { return graph_; }

  /// Reassemble from an already-filtered graph (file loading); validates that
  /// every edge is above s.
  static ThresholdedGraph from_retained(ValuedGraph retained, double s);

 private:
  double threshold_ = 0.0;
  ValuedGraph graph_;
};

/// Requires 0 <= s < 1.
ThresholdedGraph threshold(const ValuedGraph& g, double s);

}  // namespace assograph
