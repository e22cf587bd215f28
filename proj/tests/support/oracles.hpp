#pragma once

// Brute-force reference implementations used by the tests. Each one is
// written directly from the definition and shares no code path with the
// library routine it checks.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "assograph/graph.hpp"

namespace oracle {

using assograph::Edge;
using assograph::NodeId;
using assograph::ValuedGraph;

struct PairValue {
  NodeId u;
  NodeId v;
  double value;
};

/// All unit pairs, counting memberships by scanning every hyper-edge.
inline std::map<std::pair<NodeId, NodeId>, double> equivalence_by_counting(
    const std::vector<std::vector<NodeId>>& hyperedges) {
  std::set<NodeId> units;
  for (const auto& h : hyperedges) units.insert(h.begin(), h.end());
  auto contains = [](const std::vector<NodeId>& h, NodeId x) {
    return std::find(h.begin(), h.end(), x) != h.end();
  };
  std::map<std::pair<NodeId, NodeId>, double> out;
  for (NodeId u : units) {
    for (NodeId v : units) {
      if (!(u < v)) continue;
      long n_u = 0, n_v = 0, n_uv = 0;
      for (const auto& h : hyperedges) {
        const bool hu = contains(h, u);
        const bool hv = contains(h, v);
        n_u += hu;
        n_v += hv;
        n_uv += hu && hv;
      }
      if (n_uv > 0) {
        out[{u, v}] = static_cast<double>(n_uv * n_uv) / static_cast<double>(n_u * n_v);
      }
    }
  }
  return out;
}

/// Adjacency matrix view: value or nullopt.
struct Dense {
  std::vector<NodeId> ids;
  std::vector<std::vector<std::optional<double>>> w;

  explicit Dense(const ValuedGraph& g) : ids(g.vertices().begin(), g.vertices().end()) {
    w.assign(ids.size(), std::vector<std::optional<double>>(ids.size()));
    for (const Edge& e : g.edges()) {
      const auto a = index(e.u);
      const auto b = index(e.v);
      w[a][b] = e.value;
      w[b][a] = e.value;
    }
  }
  std::size_t index(NodeId v) const {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  }
  std::size_t size() const { return ids.size(); }
};

/// Connected components by breadth-first search, as sorted vertex sets.
inline std::set<std::set<NodeId>> components(const ValuedGraph& g) {
  const Dense d(g);
  std::vector<bool> seen(d.size(), false);
  std::set<std::set<NodeId>> out;
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (seen[s]) continue;
    std::set<NodeId> comp;
    std::deque<std::size_t> q{s};
    seen[s] = true;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop_front();
      comp.insert(d.ids[v]);
      for (std::size_t x = 0; x < d.size(); ++x) {
        if (d.w[v][x] && !seen[x]) {
          seen[x] = true;
          q.push_back(x);
        }
      }
    }
    out.insert(comp);
  }
  return out;
}

/// Edges that beat every adjacent edge, checked by scanning all other
/// vertices z for both endpoints.
inline std::set<std::pair<NodeId, NodeId>> local_maxima(const ValuedGraph& g) {
  const Dense d(g);
  std::set<std::pair<NodeId, NodeId>> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (!d.w[i][j]) continue;
      const double a = *d.w[i][j];
      bool ok = true;
      for (std::size_t z = 0; z < d.size() && ok; ++z) {
        if (z == i || z == j) continue;
        if (d.w[i][z] && !(a > *d.w[i][z])) ok = false;
        if (d.w[j][z] && !(a > *d.w[j][z])) ok = false;
      }
      if (ok) out.insert({d.ids[i], d.ids[j]});
    }
  }
  return out;
}

/// Betweenness by enumerating every unordered pair {s,t}: geodesic counts from
/// both ends give the fraction of s-t geodesics through each v.
inline std::map<NodeId, double> betweenness_by_pairs(const ValuedGraph& g) {
  const Dense d(g);
  const std::size_t n = d.size();
  std::vector<std::vector<long>> dist(n, std::vector<long>(n, -1));
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    dist[s][s] = 0;
    sigma[s][s] = 1;
    std::deque<std::size_t> q{s};
    while (!q.empty()) {
      const auto v = q.front();
      q.pop_front();
      for (std::size_t x = 0; x < n; ++x) {
        if (!d.w[v][x]) continue;
        if (dist[s][x] < 0) {
          dist[s][x] = dist[s][v] + 1;
          q.push_back(x);
        }
        if (dist[s][x] == dist[s][v] + 1) sigma[s][x] += sigma[s][v];
      }
    }
  }
  std::map<NodeId, double> out;
  for (std::size_t v = 0; v < n; ++v) {
    double total = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = s + 1; t < n; ++t) {
        if (v == s || v == t || dist[s][t] < 0 || dist[s][v] < 0 || dist[v][t] < 0) continue;
        if (dist[s][v] + dist[v][t] == dist[s][t]) total += sigma[s][v] * sigma[v][t] / sigma[s][t];
      }
    }
    out[d.ids[v]] = total;
  }
  return out;
}

struct SimplePath {
  std::vector<NodeId> vertices;
  double bottleneck;
};

/// Exhaustive simple-path enumeration; picks max bottleneck, then fewest
/// hops, then lexicographically smallest sequence.
inline std::optional<SimplePath> best_simple_path(const ValuedGraph& g, NodeId from, NodeId to) {
  const Dense d(g);
  if (from == to) return SimplePath{{from}, 1.0};
  std::optional<SimplePath> best;
  std::vector<NodeId> stack{from};
  std::vector<bool> on(d.size(), false);
  on[d.index(from)] = true;
  std::function<void(std::size_t, double)> dfs = [&](std::size_t v, double bn) {
    if (d.ids[v] == to) {
      SimplePath p{stack, bn};
      if (!best || p.bottleneck > best->bottleneck ||
          (p.bottleneck == best->bottleneck &&
           (p.vertices.size() < best->vertices.size() ||
            (p.vertices.size() == best->vertices.size() && p.vertices < best->vertices)))) {
        best = p;
      }
      return;
    }
    for (std::size_t x = 0; x < d.size(); ++x) {
      if (!d.w[v][x] || on[x]) continue;
      on[x] = true;
      stack.push_back(d.ids[x]);
      dfs(x, std::min(bn, *d.w[v][x]));
      stack.pop_back();
      on[x] = false;
    }
  };
  dfs(d.index(from), 1.0);
  return best;
}

}  // namespace oracle
