#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "assograph/assoc_graph.hpp"
#include "assograph/graph.hpp"

namespace assograph {

/// Edges whose value strictly exceeds every other edge incident to either
/// endpoint. Missing edges impose no constraint; ties disqualify both sides.
std::vector<VertexPair> local_max_edges(const ValuedGraph& g);

/// One CPCL iteration's partition of the previous level's nodes.
struct PartitionLevel {
  int level = 1;
  /// Node ids of the previous level (unit ids at level 1, cluster indices of
  /// level-1 otherwise). Each cluster is sorted; clusters are ordered by their
  /// smallest member, which keeps them ordered by smallest base unit too.
  std::vector<std::vector<NodeId>> clusters;
  std::vector<VertexPair> s_edges;
  bool merged = false;

  friend bool operator==(const PartitionLevel&, const PartitionLevel&) = default;
};

/// Connected components of (V, S); untouched vertices stay singletons.
PartitionLevel merge_components(const ValuedGraph& g, std::span<const VertexPair> s_edges,
                                int level = 1);

/// Graph over cluster indices 0..k-1 of `p`; each inter-cluster value is the
/// maximum over crossing edges.
ValuedGraph reduce_graph(const ValuedGraph& g, const PartitionLevel& p);

enum class Termination {
  no_merge,   // the last level merged nothing
  no_edges,   // the last level's reduced graph has no edges left to merge
  level_cap,  // max_levels reached
};

std::string_view to_string(Termination t) noexcept;
Termination parse_termination(std::string_view s);

/// Address of a cluster: level (>= 1) and index within that level.
struct ClusterRef {
  int level = 1;
  std::size_t index = 0;

  friend auto operator<=>(const ClusterRef&, const ClusterRef&) = default;
};

/// All recorded levels of a CPCL run plus derived lookups.
class ClusteringResult {
 public:
  ClusteringResult() = default;
  ClusteringResult(std::vector<NodeId> base_vertices, std::vector<PartitionLevel> levels,
                   std::vector<ValuedGraph> reduced_graphs, Termination termination);

  std::span<const NodeId> base_vertices() const noexcept { return base_vertices_; }
  std::span<const PartitionLevel> levels() const noexcept { return levels_; }
  std::span<const ValuedGraph> reduced_graphs() const noexcept { return reduced_; }
  Termination termination() const noexcept { return termination_; }
  int level_count() const noexcept { return static_cast<int>(levels_.size()); }

  const PartitionLevel& level(int k) const;
  const ValuedGraph& reduced_graph(int k) const;

  /// Base units of a cluster, sorted.
  std::span<const UnitId> base_members(ClusterRef ref) const;
  /// "L<level>_<smallest base unit id>".
  std::string cluster_id(ClusterRef ref) const;
  std::optional<ClusterRef> find_cluster(std::string_view id) const;
  /// Cluster index at `level` for every base unit, aligned with base_vertices().
  std::span<const std::size_t> membership_at(int level) const;
  std::size_t cluster_of(UnitId unit, int level) const;

  /// Base unit -> top-level cluster index.
  std::span<const std::size_t> flat_membership() const { return membership_at(level_count()); }

  friend bool operator==(const ClusteringResult& a, const ClusteringResult& b) {
    return a.base_vertices_ == b.base_vertices_ && a.levels_ == b.levels_ &&
           a.reduced_ == b.reduced_ && a.termination_ == b.termination_;
  }

 private:
  void check_level(int k) const;

  std::vector<NodeId> base_vertices_;
  std::vector<PartitionLevel> levels_;
  std::vector<ValuedGraph> reduced_;
  Termination termination_ = Termination::no_merge;
  // [level-1][cluster] -> base units; [level-1][base index] -> cluster.
  std::vector<std::vector<std::vector<UnitId>>> base_members_;
  std::vector<std::vector<std::size_t>> membership_;
};

/// Iterate local_max_edges -> merge_components -> reduce_graph until a level
/// merges nothing, no reduced edges remain, or `max_levels` levels exist.
ClusteringResult cpcl(const ValuedGraph& g, std::optional<int> max_levels = std::nullopt);
inline ClusteringResult cpcl(const ThresholdedGraph& g, std::optional<int> max_levels = std::nullopt) {
  return cpcl(g.graph(), max_levels);
}

}  // namespace assograph
