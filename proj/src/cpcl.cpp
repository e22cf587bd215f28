#include "assograph/cpcl.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <numeric>

#include "assograph/error.hpp"

namespace assograph {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root wins so roots are the smallest index of their set.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<VertexPair> local_max_edges(const ValuedGraph& g) {
  // An edge is a strict local maximum iff it is the unique maximum among the
  // incident edges of both of its endpoints.
  const std::size_t n = g.vertex_count();
  std::vector<double> best(n, -std::numeric_limits<double>::infinity());
  std::vector<std::uint32_t> best_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& nb : g.neighbors_at(i)) {
      if (nb.value > best[i]) {
        best[i] = nb.value;
        best_count[i] = 1;
      } else if (nb.value == best[i]) {
        ++best_count[i];
      }
    }
  }
  std::vector<VertexPair> out;
  for (const Edge& e : g.edges()) {
    const std::size_t iu = g.index_of(e.u);
    const std::size_t iv = g.index_of(e.v);
    if (e.value == best[iu] && best_count[iu] == 1 && e.value == best[iv] && best_count[iv] == 1) {
      out.push_back(e.pair());
    }
  }
  return out;
}

PartitionLevel merge_components(const ValuedGraph& g, std::span<const VertexPair> s_edges, int level) {
  DisjointSets sets(g.vertex_count());
  for (const VertexPair& p : s_edges) {
    if (!g.value(p.u, p.v)) {
      throw Error(ErrorCode::invalid_argument, "selected pair {" + std::to_string(p.u) + "," +
                                                   std::to_string(p.v) + "} is not an edge");
    }
    sets.unite(g.index_of(p.u), g.index_of(p.v));
  }
  PartitionLevel out;
  out.level = level;
  out.s_edges.assign(s_edges.begin(), s_edges.end());
  std::sort(out.s_edges.begin(), out.s_edges.end());
  out.s_edges.erase(std::unique(out.s_edges.begin(), out.s_edges.end()), out.s_edges.end());

  // Roots are minimal indices, so visiting vertices in order creates clusters
  // already ordered by smallest member.
  std::vector<std::size_t> cluster_of_root(g.vertex_count(), std::numeric_limits<std::size_t>::max());
  const auto vertices = g.vertices();
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::size_t root = sets.find(i);
    if (cluster_of_root[root] == std::numeric_limits<std::size_t>::max()) {
      cluster_of_root[root] = out.clusters.size();
      out.clusters.emplace_back();
    }
    out.clusters[cluster_of_root[root]].push_back(vertices[i]);
  }
  out.merged = std::any_of(out.clusters.begin(), out.clusters.end(),
                           [](const auto& c) { return c.size() >= 2; });
  return out;
}

ValuedGraph reduce_graph(const ValuedGraph& g, const PartitionLevel& p) {
  std::vector<std::size_t> cluster(g.vertex_count(), std::numeric_limits<std::size_t>::max());
  for (std::size_t c = 0; c < p.clusters.size(); ++c) {
    for (NodeId v : p.clusters[c]) {
      auto& slot = cluster[g.index_of(v)];
      if (slot != std::numeric_limits<std::size_t>::max()) {
        throw Error(ErrorCode::invalid_argument, "vertex " + std::to_string(v) + " in two clusters");
      }
      slot = c;
    }
  }
  if (std::find(cluster.begin(), cluster.end(), std::numeric_limits<std::size_t>::max()) !=
      cluster.end()) {
    throw Error(ErrorCode::invalid_argument, "partition does not cover the graph");
  }
  std::map<VertexPair, double> best;
  for (const Edge& e : g.edges()) {
    const auto cu = static_cast<NodeId>(cluster[g.index_of(e.u)]);
    const auto cv = static_cast<NodeId>(cluster[g.index_of(e.v)]);
    if (cu == cv) continue;
    auto [it, inserted] = best.try_emplace(VertexPair::of(cu, cv), e.value);
    if (!inserted) it->second = std::max(it->second, e.value);
  }
  std::vector<NodeId> vertices(p.clusters.size());
  std::iota(vertices.begin(), vertices.end(), NodeId{0});
  std::vector<Edge> edges;
  edges.reserve(best.size());
  for (const auto& [pair, value] : best) edges.push_back({pair.u, pair.v, value});
  return ValuedGraph(std::move(vertices), std::move(edges));
}

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::no_merge: return "no_merge";
    case Termination::no_edges: return "no_edges";
    case Termination::level_cap: return "level_cap";
  }
  return "no_merge";
}

Termination parse_termination(std::string_view s) {
  if (s == "no_merge") return Termination::no_merge;
  if (s == "no_edges") return Termination::no_edges;
  if (s == "level_cap") return Termination::level_cap;
  throw Error(ErrorCode::invalid_argument, "unknown termination '" + std::string(s) + "'");
}

ClusteringResult::ClusteringResult(std::vector<NodeId> base_vertices,
                                   std::vector<PartitionLevel> levels,
                                   std::vector<ValuedGraph> reduced_graphs, Termination termination)
    : base_vertices_(std::move(base_vertices)),
      levels_(std::move(levels)),
      reduced_(std::move(reduced_graphs)),
      termination_(termination) {
  std::sort(base_vertices_.begin(), base_vertices_.end());
  if (levels_.size() != reduced_.size()) {
    throw Error(ErrorCode::invalid_argument, "level and reduced-graph counts differ");
  }
  std::vector<std::vector<UnitId>> previous;
  previous.reserve(base_vertices_.size());
  for (NodeId v : base_vertices_) previous.push_back({v});
  auto position = [&](NodeId node, int level) -> std::size_t {
    if (level == 1) {
      const auto it = std::lower_bound(base_vertices_.begin(), base_vertices_.end(), node);
      if (it == base_vertices_.end() || *it != node) return previous.size();
      return static_cast<std::size_t>(it - base_vertices_.begin());
    }
    return node;
  };
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    const PartitionLevel& lvl = levels_[k];
    const int level_no = static_cast<int>(k) + 1;
    if (lvl.level != level_no) {
      throw Error(ErrorCode::invalid_argument, "levels must be numbered 1..n consecutively");
    }
    std::vector<bool> seen(previous.size(), false);
    std::vector<std::vector<UnitId>> members;
    members.reserve(lvl.clusters.size());
    for (const auto& cluster : lvl.clusters) {
      if (cluster.empty()) {
        throw Error(ErrorCode::invalid_argument, "empty cluster at level " + std::to_string(level_no));
      }
      std::vector<UnitId> units;
      for (NodeId node : cluster) {
        const std::size_t pos = position(node, level_no);
        if (pos >= previous.size() || seen[pos]) {
          throw Error(ErrorCode::invalid_argument,
                      "level " + std::to_string(level_no) + " is not a partition of level " +
                          std::to_string(level_no - 1));
        }
        seen[pos] = true;
        units.insert(units.end(), previous[pos].begin(), previous[pos].end());
      }
      std::sort(units.begin(), units.end());
      members.push_back(std::move(units));
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw Error(ErrorCode::invalid_argument,
                  "level " + std::to_string(level_no) + " does not cover the previous level");
    }
    if (reduced_[k].vertex_count() != members.size()) {
      throw Error(ErrorCode::invalid_argument,
                  "reduced graph of level " + std::to_string(level_no) + " has wrong vertex count");
    }
    std::vector<std::size_t> membership(base_vertices_.size());
    for (std::size_t c = 0; c < members.size(); ++c) {
      for (UnitId u : members[c]) membership[position(u, 1)] = c;
    }
    membership_.push_back(std::move(membership));
    base_members_.push_back(members);
    previous = std::move(members);
  }
}

void ClusteringResult::check_level(int k) const {
  if (k < 1 || k > level_count()) {
    throw Error(ErrorCode::not_found, "level " + std::to_string(k) + " does not exist");
  }
}

const PartitionLevel& ClusteringResult::level(int k) const {
  check_level(k);
  return levels_[static_cast<std::size_t>(k - 1)];
}

const ValuedGraph& ClusteringResult::reduced_graph(int k) const {
  check_level(k);
  return reduced_[static_cast<std::size_t>(k - 1)];
}

std::span<const UnitId> ClusteringResult::base_members(ClusterRef ref) const {
  check_level(ref.level);
  const auto& clusters = base_members_[static_cast<std::size_t>(ref.level - 1)];
  if (ref.index >= clusters.size()) {
    throw Error(ErrorCode::not_found, "cluster index out of range");
  }
  return clusters[ref.index];
}

std::string ClusteringResult::cluster_id(ClusterRef ref) const {
  return "L" + std::to_string(ref.level) + "_" + std::to_string(base_members(ref).front());
}

std::optional<ClusterRef> ClusteringResult::find_cluster(std::string_view id) const {
  if (id.size() < 4 || id.front() != 'L') return std::nullopt;
  const auto sep = id.find('_');
  if (sep == std::string_view::npos) return std::nullopt;
  int level = 0;
  UnitId unit = 0;
  const auto lv = std::from_chars(id.data() + 1, id.data() + sep, level);
  const auto un = std::from_chars(id.data() + sep + 1, id.data() + id.size(), unit);
  if (lv.ec != std::errc{} || lv.ptr != id.data() + sep || un.ec != std::errc{} ||
      un.ptr != id.data() + id.size()) {
    return std::nullopt;
  }
  if (level < 1 || level > level_count()) return std::nullopt;
  const auto it = std::lower_bound(base_vertices_.begin(), base_vertices_.end(), unit);
  if (it == base_vertices_.end() || *it != unit) return std::nullopt;
  const std::size_t c =
      membership_[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(it - base_vertices_.begin())];
  ClusterRef ref{level, c};
  if (base_members(ref).front() != unit) return std::nullopt;
  return ref;
}

std::span<const std::size_t> ClusteringResult::membership_at(int level) const {
  check_level(level);
  return membership_[static_cast<std::size_t>(level - 1)];
}

std::size_t ClusteringResult::cluster_of(UnitId unit, int level) const {
  const auto it = std::lower_bound(base_vertices_.begin(), base_vertices_.end(), unit);
  if (it == base_vertices_.end() || *it != unit) {
    throw Error(ErrorCode::not_found, "unit " + std::to_string(unit) + " not clustered");
  }
  return membership_at(level)[static_cast<std::size_t>(it - base_vertices_.begin())];
}

ClusteringResult cpcl(const ValuedGraph& g, std::optional<int> max_levels) {
  if (max_levels && *max_levels < 1) {
    throw Error(ErrorCode::invalid_argument, "max_levels must be at least 1");
  }
  std::vector<PartitionLevel> levels;
  std::vector<ValuedGraph> reduced;
  Termination termination = Termination::no_merge;
  const ValuedGraph* current = &g;
  for (int k = 1;; ++k) {
    const auto s = local_max_edges(*current);
    PartitionLevel p = merge_components(*current, s, k);
    ValuedGraph r = reduce_graph(*current, p);
    const bool merged = p.merged;
    levels.push_back(std::move(p));
    reduced.push_back(std::move(r));
    if (!merged) {
      termination = Termination::no_merge;
      break;
    }
    if (reduced.back().edge_count() == 0) {
      termination = Termination::no_edges;
      break;
    }
    if (max_levels && k >= *max_levels) {
      termination = Termination::level_cap;
      break;
    }
    current = &reduced.back();
  }
  return ClusteringResult(std::vector<NodeId>(g.vertices().begin(), g.vertices().end()),
                          std::move(levels), std::move(reduced), termination);
}

}  // namespace assograph
