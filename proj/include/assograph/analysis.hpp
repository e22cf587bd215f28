#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "assograph/corpus.hpp"
#include "assograph/cpcl.hpp"
#include "assograph/graph.hpp"

namespace assograph {

struct ClusterLabel {
  std::string cluster_id;
  UnitId label_unit = 0;
  std::size_t external_link_count = 0;

  friend bool operator==(const ClusterLabel&, const ClusterLabel&) = default;
};

/// Label each cluster of `level` by the member with the most base-graph edges
/// leaving the cluster; ties go to the higher total degree, then the smaller
/// unit id. Result is indexed like the level's clusters.
std::vector<ClusterLabel> label_clusters(const ValuedGraph& base, const ClusteringResult& r, int level);

/// Unweighted shortest-path betweenness (Brandes). A vertex scores the sum,
/// over unordered pairs {s,t} of other vertices, of the fraction of s-t
/// geodesics through it.
std::map<UnitId, double> betweenness(const ValuedGraph& g);

struct StrongPath {
  std::vector<NodeId> vertices;
  double bottleneck = 1.0;

  friend bool operator==(const StrongPath&, const StrongPath&) = default;
};

/// Path maximizing its weakest edge; ties broken by hop count, then by the
/// lexicographically smallest vertex sequence. nullopt when disconnected.
std::optional<StrongPath> strongest_path(const ValuedGraph& g, NodeId from, NodeId to);

struct BoundaryEdge {
  UnitId member = 0;
  UnitId outside = 0;
  std::string target_cluster;
  double value = 0.0;

  friend bool operator==(const BoundaryEdge&, const BoundaryEdge&) = default;
};

struct ClusterSubgraph {
  std::string cluster_id;
  ValuedGraph internal;
  std::vector<VertexPair> skeleton;  // internal edges selected at level 1
  std::vector<BoundaryEdge> boundary;
};

/// Induced subgraph on a cluster's base units plus its outgoing edges, each
/// tagged with the cluster (same level) on the other side.
ClusterSubgraph cluster_subgraph(const ValuedGraph& base, const ClusteringResult& r,
                                 std::string_view cluster_id);

/// Documents listing the unit (as author or extracted term), in corpus order.
std::vector<std::string> unit_documents(const Corpus& c, UnitId unit);

}  // namespace assograph
