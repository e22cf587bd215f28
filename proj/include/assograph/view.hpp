#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "assograph/artifact.hpp"

namespace assograph {

struct ViewNode {
  std::string id;    // "u<unit>" for units, cluster id for clusters
  std::string kind;  // "author", "term" or "cluster"
  std::string label;
  int level = 0;                     // 0 for units
  std::optional<UnitId> unit;        // units only
  std::string parent;                // enclosing cluster inside the view, or empty
  std::vector<std::string> members;  // clusters only: child node ids
  std::optional<UnitId> label_unit;  // clusters only
  std::size_t external_links = 0;    // clusters only

  friend bool operator==(const ViewNode&, const ViewNode&) = default;
};

struct ViewEdge {
  std::string source;
  std::string target;
  double value = 0.0;
  int level = 0;  // 0: base G_s edge; k: reduced edge between level-k clusters
  bool s_edge = false;

  friend bool operator==(const ViewEdge&, const ViewEdge&) = default;
};

/// Everything the explorer and the exporters need from a clustering result.
///
/// The view covers cluster levels 1..view_level. By default view_level is the
/// last level that merged anything (0 when nothing merged).
struct GraphView {
  GraphMode mode = GraphMode::coauthor;
  double threshold = 0.0;
  int level_count = 0;
  int view_level = 0;
  Termination termination = Termination::no_merge;
  std::vector<ViewNode> nodes;  // units by id, then clusters by level and index
  std::vector<ViewEdge> edges;  // base edges, then reduced edges by level
  std::map<std::string, std::vector<std::string>> documents;  // unit node id -> doc ids

  const ViewNode* find_node(std::string_view id) const;

  friend bool operator==(const GraphView&, const GraphView&) = default;
};

std::string unit_node_id(UnitId u);

GraphView make_view(const ResultArtifact& r, std::optional<int> level = std::nullopt);

nlohmann::json to_json(const GraphView& v);
GraphView view_from_json(const nlohmann::json& j);

/// aiSee-style GDL: one nested subgraph per cluster, `folding: 1` on the
/// folded ones, node titles = canonical unit forms, edge labels = values with
/// three decimals. Unknown cluster ids in `folded` raise not_found.
std::string export_gdl(const GraphView& v, const std::set<std::string>& folded = {});

/// Graphviz DOT with nested `subgraph "cluster_<id>"` blocks.
std::string export_dot(const GraphView& v);

}  // namespace assograph
