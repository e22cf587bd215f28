#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace assograph {

/// Vertex identifier. For base graphs this is the unit id assigned by the
/// corpus registry; for reduced graphs it is the cluster index at that level.
using NodeId = std::uint32_t;
using UnitId = NodeId;

/// Unordered vertex pair stored in canonical order (u < v).
struct VertexPair {
  NodeId u = 0;
  NodeId v = 0;

  static VertexPair of(NodeId a, NodeId b) noexcept {
    return a < b ? VertexPair{a, b} : VertexPair{b, a};
  }

  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double value = 0.0;

  VertexPair pair() const noexcept { return {u, v}; }

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected graph with edge valuation in (0, 1].
///
/// Vertices and edges are kept sorted (edges lexicographically by (u, v)), so
/// two graphs built from the same vertex/edge sets compare equal regardless of
/// insertion order. The constructor rejects self-loops, duplicate pairs,
/// dangling endpoints and values outside (0, 1].
class ValuedGraph {
 public:
  /// Incident edge seen from one endpoint.
  struct Neighbor {
    NodeId vertex;
    double value;
  };

  ValuedGraph() = default;
  ValuedGraph(std::vector<NodeId> vertices, std::vector<Edge> edges);

  std::span<const NodeId> vertices() const noexcept { return vertices_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  bool has_vertex(NodeId v) const noexcept;
  std::optional<double> value(NodeId a, NodeId b) const noexcept;

  /// Position of a vertex in vertices(); throws if absent.
  std::size_t index_of(NodeId v) const;

  /// Neighbors of the vertex at position `index` in vertices(), sorted by id.
  std::span<const Neighbor> neighbors_at(std::size_t index) const noexcept;
  std::span<const Neighbor> neighbors(NodeId v) const { return neighbors_at(index_of(v)); }
  std::size_t degree(NodeId v) const { return neighbors(v).size(); }

  /// Same vertex set, only edges satisfying `keep`.
  template <class Pred>
  ValuedGraph filter_edges(Pred keep) const {
    std::vector<Edge> kept;
    for (const Edge& e : edges_) {
      if (keep(e)) kept.push_back(e);
    }
    return ValuedGraph(vertices_, std::move(kept), Presorted{});
  }

  friend bool operator==(const ValuedGraph& a, const ValuedGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  struct Presorted {};
  ValuedGraph(std::vector<NodeId> vertices, std::vector<Edge> edges, Presorted);
  void build_adjacency();

  std::vector<NodeId> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
};

}  // namespace assograph
