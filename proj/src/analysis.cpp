#include "assograph/analysis.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>

#include "assograph/error.hpp"

namespace assograph {

std::vector<ClusterLabel> label_clusters(const ValuedGraph& base, const ClusteringResult& r, int level) {
  const auto& lvl = r.level(level);
  std::vector<ClusterLabel> out;
  out.reserve(lvl.clusters.size());
  for (std::size_t c = 0; c < lvl.clusters.size(); ++c) {
    const ClusterRef ref{level, c};
    ClusterLabel best{r.cluster_id(ref), 0, 0};
    std::size_t best_degree = 0;
    bool first = true;
    for (UnitId u : r.base_members(ref)) {
      std::size_t external = 0;
      std::size_t degree = 0;
      if (base.has_vertex(u)) {
        for (const auto& nb : base.neighbors(u)) {
          ++degree;
          if (r.cluster_of(nb.vertex, level) != c) ++external;
        }
      }
      // Members are visited in increasing id order, so strict comparisons
      // realize the smallest-id tie-break.
      if (first || external > best.external_link_count ||
          (external == best.external_link_count && degree > best_degree)) {
        best.label_unit = u;
        best.external_link_count = external;
        best_degree = degree;
        first = false;
      }
    }
    out.push_back(std::move(best));
  }
  return out;
}

std::map<UnitId, double> betweenness(const ValuedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<double> score(n, 0.0);
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<double> sigma(n);
  std::vector<long> dist(n);
  std::vector<double> delta(n);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (auto& p : preds) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (const auto& nb : g.neighbors_at(v)) {
        const std::size_t w = g.index_of(nb.vertex);
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t w = *it;
      for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) score[w] += delta[w];
    }
  }
  std::map<UnitId, double> out;
  const auto vertices = g.vertices();
  // Each unordered pair was counted from both ends.
  for (std::size_t i = 0; i < n; ++i) out.emplace(vertices[i], score[i] / 2.0);
  return out;
}

std::optional<StrongPath> strongest_path(const ValuedGraph& g, NodeId from, NodeId to) {
  const std::size_t src = g.index_of(from);
  const std::size_t dst = g.index_of(to);
  if (src == dst) return StrongPath{{from}, 1.0};

  // Widest-path Dijkstra for the optimal bottleneck.
  const std::size_t n = g.vertex_count();
  std::vector<double> width(n, 0.0);
  std::vector<bool> done(n, false);
  std::priority_queue<std::pair<double, std::size_t>> heap;
  width[src] = std::numeric_limits<double>::infinity();
  heap.emplace(width[src], src);
  while (!heap.empty()) {
    const auto [w, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = true;
    if (v == dst) break;
    for (const auto& nb : g.neighbors_at(v)) {
      const std::size_t x = g.index_of(nb.vertex);
      const double cand = std::min(w, nb.value);
      if (!done[x] && cand > width[x]) {
        width[x] = cand;
        heap.emplace(cand, x);
      }
    }
  }
  if (!done[dst]) return std::nullopt;
  const double bottleneck = width[dst];

  // Every optimal path lives on edges >= bottleneck. Hop distances to the
  // target over that subgraph let a greedy walk pick the smallest next vertex
  // among shortest continuations, giving the lexicographic minimum.
  std::vector<long> hops(n, -1);
  hops[dst] = 0;
  std::deque<std::size_t> queue{dst};
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (const auto& nb : g.neighbors_at(v)) {
      if (nb.value < bottleneck) continue;
      const std::size_t x = g.index_of(nb.vertex);
      if (hops[x] < 0) {
        hops[x] = hops[v] + 1;
        queue.push_back(x);
      }
    }
  }
  StrongPath path{{from}, bottleneck};
  std::size_t cur = src;
  while (cur != dst) {
    // neighbors are sorted by id, so the first qualifying one is the smallest.
    for (const auto& nb : g.neighbors_at(cur)) {
      if (nb.value < bottleneck) continue;
      const std::size_t x = g.index_of(nb.vertex);
      if (hops[x] == hops[cur] - 1) {
        cur = x;
        path.vertices.push_back(nb.vertex);
        break;
      }
    }
  }
  return path;
}

ClusterSubgraph cluster_subgraph(const ValuedGraph& base, const ClusteringResult& r,
                                 std::string_view cluster_id) {
  const auto ref = r.find_cluster(cluster_id);
  if (!ref) {
    throw Error(ErrorCode::not_found, "unknown cluster '" + std::string(cluster_id) + "'");
  }
  const auto members = r.base_members(*ref);
  std::vector<NodeId> vertices(members.begin(), members.end());
  std::vector<Edge> internal;
  std::vector<BoundaryEdge> boundary;
  for (UnitId u : members) {
    if (!base.has_vertex(u)) continue;
    for (const auto& nb : base.neighbors(u)) {
      const std::size_t other = r.cluster_of(nb.vertex, ref->level);
      if (other == ref->index) {
        if (u < nb.vertex) internal.push_back({u, nb.vertex, nb.value});
      } else {
        boundary.push_back({u, nb.vertex, r.cluster_id({ref->level, other}), nb.value});
      }
    }
  }
  ClusterSubgraph out;
  out.cluster_id = std::string(cluster_id);
  out.internal = ValuedGraph(std::move(vertices), std::move(internal));
  for (const VertexPair& p : r.level(1).s_edges) {
    if (out.internal.value(p.u, p.v)) out.skeleton.push_back(p);
  }
  out.boundary = std::move(boundary);
  return out;
}

std::vector<std::string> unit_documents(const Corpus& c, UnitId unit) {
  const UnitInfo& info = c.registry().at(unit);
  std::vector<std::string> out;
  for (const Document& d : c.documents()) {
    const auto& ids = info.kind == UnitKind::author ? d.author_units : d.term_units;
    if (std::binary_search(ids.begin(), ids.end(), unit)) out.push_back(d.id);
  }
  return out;
}

}  // namespace assograph
