#include "assograph/assoc_graph.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "assograph/error.hpp"

namespace assograph {

std::string_view to_string(GraphMode mode) noexcept {
  return mode == GraphMode::coauthor ? "coauthor" : "term_author";
}

GraphMode parse_graph_mode(std::string_view s) {
  if (s == "coauthor") return GraphMode::coauthor;
  if (s == "term_author") return GraphMode::term_author;
  throw Error(ErrorCode::invalid_argument, "unknown graph mode '" + std::string(s) + "'");
}

double default_threshold(GraphMode mode) noexcept {
  return mode == GraphMode::coauthor ? 0.0 : 0.8;
}

Hypergraph::Hypergraph(std::vector<Hyperedge> edges) : edges_(std::move(edges)) {
  for (Hyperedge& h : edges_) {
    std::sort(h.units.begin(), h.units.end());
    h.units.erase(std::unique(h.units.begin(), h.units.end()), h.units.end());
    for (UnitId u : h.units) ++occurrence_[u];
  }
}

std::uint32_t Hypergraph::occurrence_of(UnitId u) const noexcept {
  const auto it = occurrence_.find(u);
  return it == occurrence_.end() ? 0 : it->second;
}

Hypergraph build_hypergraph(const Corpus& c, GraphMode mode, const TermsPerDocument& terms_per_doc,
                            std::span<const VariantLink> variants) {
  for (const auto& [doc_id, terms] : terms_per_doc) {
    if (c.find_document(doc_id) == nullptr) {
      throw Error(ErrorCode::not_found, "terms given for unknown document '" + doc_id + "'");
    }
  }
  std::map<UnitId, std::vector<UnitId>> variant_adj;
  if (mode == GraphMode::term_author) {
    for (const VariantLink& l : variants) {
      variant_adj[l.u].push_back(l.v);
      variant_adj[l.v].push_back(l.u);
    }
  }
  std::vector<Hyperedge> edges;
  edges.reserve(c.documents().size());
  for (const Document& d : c.documents()) {
    Hyperedge h{d.id, d.author_units};
    if (mode == GraphMode::term_author) {
      const auto it = terms_per_doc.find(d.id);
      if (it == terms_per_doc.end()) {
        throw Error(ErrorCode::precondition,
                    "term_author mode: no term set for document '" + d.id + "'");
      }
      for (UnitId t : it->second) {
        h.units.push_back(t);
        if (const auto adj = variant_adj.find(t); adj != variant_adj.end()) {
          h.units.insert(h.units.end(), adj->second.begin(), adj->second.end());
        }
      }
    }
    edges.push_back(std::move(h));
  }
  return Hypergraph(std::move(edges));
}

Hypergraph build_hypergraph(const Corpus& c, GraphMode mode) {
  if (mode == GraphMode::coauthor) return build_hypergraph(c, mode, {}, {});
  if (!c.terms()) {
    throw Error(ErrorCode::precondition, "term_author mode requires term extraction on the corpus");
  }
  TermsPerDocument per_doc;
  for (const Document& d : c.documents()) per_doc.emplace(d.id, d.term_units);
  return build_hypergraph(c, mode, per_doc, c.terms()->variants);
}

double equivalence_coefficient(std::uint64_t n_u, std::uint64_t n_v, std::uint64_t n_uv) {
  if (n_uv < 1 || n_u < n_uv || n_v < n_uv) {
    throw Error(ErrorCode::invalid_argument,
                "equivalence coefficient requires n_u >= n_uv >= 1 and n_v >= n_uv (got " +
                    std::to_string(n_u) + ", " + std::to_string(n_v) + ", " +
                    std::to_string(n_uv) + ")");
  }
  const auto uv = static_cast<double>(n_uv);
  return (uv / static_cast<double>(n_u)) * (uv / static_cast<double>(n_v));
}

ValuedGraph derive_graph(const Hypergraph& h) {
  std::unordered_map<std::uint64_t, std::uint32_t> co;
  for (const Hyperedge& e : h.edges()) {
    for (std::size_t i = 0; i < e.units.size(); ++i) {
      for (std::size_t j = i + 1; j < e.units.size(); ++j) {
        ++co[(static_cast<std::uint64_t>(e.units[i]) << 32) | e.units[j]];
      }
    }
  }
  std::vector<NodeId> vertices;
  vertices.reserve(h.occurrence().size());
  for (const auto& [u, n] : h.occurrence()) vertices.push_back(u);
  std::vector<Edge> edges;
  edges.reserve(co.size());
  for (const auto& [key, n_uv] : co) {
    const auto u = static_cast<UnitId>(key >> 32);
    const auto v = static_cast<UnitId>(key & 0xFFFFFFFFu);
    edges.push_back({u, v, equivalence_coefficient(h.occurrence_of(u), h.occurrence_of(v), n_uv)});
  }
  return ValuedGraph(std::move(vertices), std::move(edges));
}

VariantValuation apply_variant_valuation(const ValuedGraph& g, std::span<const VariantLink> variants) {
  std::set<VertexPair> linked;
  for (const VariantLink& l : variants) linked.insert(VertexPair::of(l.u, l.v));
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::size_t hits = 0;
  for (Edge& e : edges) {
    if (linked.contains(e.pair())) {
      e.value = 1.0;
      ++hits;
    }
  }
  return {ValuedGraph(std::vector<NodeId>(g.vertices().begin(), g.vertices().end()), std::move(edges)),
          linked.size() - hits};
}

ThresholdedGraph::ThresholdedGraph(const ValuedGraph& base, double s)
    : threshold_(s), graph_(base.filter_edges([s](const Edge& e) { return e.value > s; })) {}

ThresholdedGraph ThresholdedGraph::from_retained(ValuedGraph retained, double s) {
  for (const Edge& e : retained.edges()) {
    if (!(e.value > s)) {
      throw Error(ErrorCode::invalid_argument, "retained edge {" + std::to_string(e.u) + "," +
                                                   std::to_string(e.v) + "} not above threshold");
    }
  }
  ThresholdedGraph t;
  t.threshold_ = s;
  t.graph_ = std::move(retained);
  return t;
}

ThresholdedGraph threshold(const ValuedGraph& g, double s) {
  if (!(s >= 0.0 && s < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "threshold must lie in [0,1), got " + std::to_string(s));
  }
  return ThresholdedGraph(g, s);
}

}  // namespace assograph
