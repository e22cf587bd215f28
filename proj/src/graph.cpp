#include "assograph/graph.hpp"

#include <algorithm>
#include <string>

#include "assograph/error.hpp"

namespace assograph {

ValuedGraph::ValuedGraph(std::vector<NodeId> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw Error(ErrorCode::invalid_argument, "duplicate vertex in graph");
  }
  for (Edge& e : edges_) {
    if (e.u == e.v) {
      throw Error(ErrorCode::invalid_argument, "self-loop on vertex " + std::to_string(e.u));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!(e.value > 0.0 && e.value <= 1.0)) {
      throw Error(ErrorCode::invalid_argument,
                  "edge value outside (0,1] on {" + std::to_string(e.u) + "," +
                      std::to_string(e.v) + "}");
    }
    if (!has_vertex(e.u) || !has_vertex(e.v)) {
      throw Error(ErrorCode::invalid_argument,
                  "edge endpoint not in vertex set: {" + std::to_string(e.u) + "," +
                      std::to_string(e.v) + "}");
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.pair() < b.pair(); });
  const auto dup = std::adjacent_find(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.pair() == b.pair();
  });
  if (dup != edges_.end()) {
    throw Error(ErrorCode::invalid_argument, "duplicate edge {" + std::to_string(dup->u) + "," +
                                                 std::to_string(dup->v) + "}");
  }
  build_adjacency();
}

ValuedGraph::ValuedGraph(std::vector<NodeId> vertices, std::vector<Edge> edges, Presorted)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  build_adjacency();
}

void ValuedGraph::build_adjacency() {
  offsets_.assign(vertices_.size() + 1, 0);
  std::vector<std::size_t> eu(edges_.size());
  std::vector<std::size_t> ev(edges_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    eu[k] = index_of(edges_[k].u);
    ev[k] = index_of(edges_[k].v);
    ++offsets_[eu[k] + 1];
    ++offsets_[ev[k] + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    adjacency_[cursor[eu[k]]++] = {edges_[k].v, edges_[k].value};
    adjacency_[cursor[ev[k]]++] = {edges_[k].u, edges_[k].value};
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

bool ValuedGraph::has_vertex(NodeId v) const noexcept {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::size_t ValuedGraph::index_of(NodeId v) const {
  const auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) {
    throw Error(ErrorCode::not_found, "vertex " + std::to_string(v) + " not in graph");
  }
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<double> ValuedGraph::value(NodeId a, NodeId b) const noexcept {
  const VertexPair key = VertexPair::of(a, b);
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), key,
                                   [](const Edge& e, const VertexPair& p) { return e.pair() < p; });
  if (it == edges_.end() || it->pair() != key) return std::nullopt;
  return it->value;
}

std::span<const ValuedGraph::Neighbor> ValuedGraph::neighbors_at(std::size_t index) const noexcept {
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[index],
                                                       offsets_[index + 1] - offsets_[index]);
}

}  // namespace assograph
