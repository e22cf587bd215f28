#include "assograph/json_api.hpp"

#include <algorithm>

#include "assograph/analysis.hpp"
#include "assograph/error.hpp"
#include "assograph/view.hpp"

namespace assograph {

using nlohmann::json;

namespace {

json unit_ref(const GraphArtifact& g, UnitId u) {
  return {{"unit", u}, {"id", unit_node_id(u)}, {"label", g.unit(u).label}};
}

UnitId resolve_unit(const GraphArtifact& g, std::string_view query) {
  const auto u = g.find_unit(query);
  if (!u) throw Error(ErrorCode::not_found, "unknown unit '" + std::string(query) + "'");
  return *u;
}

}  // namespace

json stats_json(const StatsReport& s) {
  json years = json::object();
  for (const auto& [y, n] : s.year_histogram) years[std::to_string(y)] = n;
  return {{"documents", s.documents},
          {"authors", s.authors},
          {"terms", s.terms},
          {"undated_documents", s.undated_documents},
          {"years", years}};
}

json document_json(const Document& d) {
  json j{{"id", d.id},
         {"authors", d.raw_authors},
         {"tags", d.tags},
         {"author_units", d.author_units},
         {"term_units", d.term_units}};
  j["title"] = d.title ? json(*d.title) : json(nullptr);
  j["abstract"] = d.abstract_text ? json(*d.abstract_text) : json(nullptr);
  j["keywords"] = d.keywords ? json(*d.keywords) : json(nullptr);
  j["year"] = d.year ? json(*d.year) : json(nullptr);
  return j;
}

json cluster_json(const ResultArtifact& r, std::string_view cluster_id) {
  const ValuedGraph& base = r.graph.graph.graph();
  const ClusterSubgraph sub = cluster_subgraph(base, r.clustering, cluster_id);
  const ClusterRef ref = *r.clustering.find_cluster(cluster_id);
  const ClusterLabel label = label_clusters(base, r.clustering, ref.level)[ref.index];
  json members = json::array();
  for (NodeId u : sub.internal.vertices()) members.push_back(unit_ref(r.graph, u));
  json internal = json::array();
  for (const Edge& e : sub.internal.edges()) {
    internal.push_back({{"source", unit_node_id(e.u)},
                        {"target", unit_node_id(e.v)},
                        {"value", e.value},
                        {"s_edge", std::binary_search(sub.skeleton.begin(), sub.skeleton.end(), e.pair())}});
  }
  json boundary = json::array();
  for (const BoundaryEdge& b : sub.boundary) {
    boundary.push_back({{"member", unit_node_id(b.member)},
                        {"outside", unit_node_id(b.outside)},
                        {"target_cluster", b.target_cluster},
                        {"value", b.value}});
  }
  return {{"cluster", sub.cluster_id},
          {"level", ref.level},
          {"label", r.graph.unit(label.label_unit).label},
          {"label_unit", label.label_unit},
          {"external_links", label.external_link_count},
          {"members", members},
          {"internal_edges", internal},
          {"boundary", boundary}};
}

json path_json(const ResultArtifact& r, std::string_view from, std::string_view to) {
  const UnitId a = resolve_unit(r.graph, from);
  const UnitId b = resolve_unit(r.graph, to);
  const auto path = strongest_path(r.graph.graph.graph(), a, b);
  if (!path) {
    return {{"found", false}, {"from", unit_ref(r.graph, a)}, {"to", unit_ref(r.graph, b)}};
  }
  json vertices = json::array();
  for (NodeId v : path->vertices) vertices.push_back(unit_ref(r.graph, v));
  return {{"found", true},
          {"vertices", vertices},
          {"bottleneck", path->bottleneck},
          {"hops", path->vertices.size() - 1}};
}

json centrality_json(const ResultArtifact& r) {
  const auto scores = betweenness(r.graph.graph.graph());
  std::vector<std::pair<UnitId, double>> ranked(scores.begin(), scores.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.second > y.second; });
  json list = json::array();
  for (const auto& [u, score] : ranked) {
    json entry = unit_ref(r.graph, u);
    entry["score"] = score;
    list.push_back(std::move(entry));
  }
  return {{"scores", list}};
}

}  // namespace assograph
