#include "assograph/view.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "assograph/analysis.hpp"
#include "assograph/error.hpp"

namespace assograph {

using nlohmann::json;

std::string unit_node_id(UnitId u) { return "u" + std::to_string(u); }

const ViewNode* GraphView::find_node(std::string_view id) const {
  for (const ViewNode& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

GraphView make_view(const ResultArtifact& r, std::optional<int> level) {
  const ClusteringResult& cr = r.clustering;
  const ValuedGraph& base = r.graph.graph.graph();
  GraphView v;
  v.mode = r.graph.mode;
  v.threshold = r.graph.graph.threshold();
  v.level_count = cr.level_count();
  v.termination = cr.termination();
  if (level) {
    if (*level < 0 || *level > cr.level_count()) {
      throw Error(ErrorCode::not_found, "level " + std::to_string(*level) + " does not exist");
    }
    v.view_level = *level;
  } else {
    for (const PartitionLevel& p : cr.levels()) {
      if (p.merged) v.view_level = p.level;
    }
  }
  const int top = v.view_level;

  for (const UnitRecord& u : r.graph.units) {
    ViewNode n;
    n.id = unit_node_id(u.id);
    n.kind = std::string(to_string(u.kind));
    n.label = u.label;
    n.unit = u.id;
    if (top >= 1) n.parent = cr.cluster_id({1, cr.cluster_of(u.id, 1)});
    v.documents.emplace(n.id, u.documents);
    v.nodes.push_back(std::move(n));
  }

  for (int k = 1; k <= top; ++k) {
    const auto labels = label_clusters(base, cr, k);
    const PartitionLevel& p = cr.level(k);
    for (std::size_t c = 0; c < p.clusters.size(); ++c) {
      const ClusterRef ref{k, c};
      ViewNode n;
      n.id = cr.cluster_id(ref);
      n.kind = "cluster";
      n.level = k;
      n.label_unit = labels[c].label_unit;
      n.label = r.graph.unit(labels[c].label_unit).label;
      n.external_links = labels[c].external_link_count;
      for (NodeId child : p.clusters[c]) {
        n.members.push_back(k == 1 ? unit_node_id(child) : cr.cluster_id({k - 1, child}));
      }
      if (k < top) n.parent = cr.cluster_id({k + 1, cr.cluster_of(cr.base_members(ref).front(), k + 1)});
      v.nodes.push_back(std::move(n));
    }
  }

  auto in_s = [&](int lvl, VertexPair pair) {
    if (lvl > cr.level_count()) return false;
    const auto& s = cr.level(lvl).s_edges;
    return std::binary_search(s.begin(), s.end(), pair);
  };
  for (const Edge& e : base.edges()) {
    v.edges.push_back({unit_node_id(e.u), unit_node_id(e.v), e.value, 0, in_s(1, e.pair())});
  }
  for (int k = 1; k <= top; ++k) {
    for (const Edge& e : cr.reduced_graph(k).edges()) {
      v.edges.push_back({cr.cluster_id({k, e.u}), cr.cluster_id({k, e.v}), e.value, k,
                         in_s(k + 1, e.pair())});
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// JSON

json to_json(const GraphView& v) {
  json nodes = json::array();
  for (const ViewNode& n : v.nodes) {
    json j{{"id", n.id}, {"kind", n.kind}, {"label", n.label}, {"level", n.level}};
    if (n.unit) j["unit"] = *n.unit;
    j["parent"] = n.parent.empty() ? json(nullptr) : json(n.parent);
    if (n.kind == "cluster") {
      j["members"] = n.members;
      j["label_unit"] = n.label_unit ? json(*n.label_unit) : json(nullptr);
      j["external_links"] = n.external_links;
    }
    nodes.push_back(std::move(j));
  }
  json edges = json::array();
  for (const ViewEdge& e : v.edges) {
    edges.push_back({{"source", e.source},
                     {"target", e.target},
                     {"value", e.value},
                     {"level", e.level},
                     {"s_edge", e.s_edge}});
  }
  return json{{"meta",
               {{"mode", to_string(v.mode)},
                {"threshold", v.threshold},
                {"level_count", v.level_count},
                {"view_level", v.view_level},
                {"termination", to_string(v.termination)}}},
              {"nodes", nodes},
              {"edges", edges},
              {"documents", v.documents}};
}

GraphView view_from_json(const json& j) {
  try {
    GraphView v;
    const json& meta = j.at("meta");
    v.mode = parse_graph_mode(meta.at("mode").get<std::string>());
    v.threshold = meta.at("threshold").get<double>();
    v.level_count = meta.at("level_count").get<int>();
    v.view_level = meta.at("view_level").get<int>();
    v.termination = parse_termination(meta.at("termination").get<std::string>());
    for (const json& n : j.at("nodes")) {
      ViewNode node;
      node.id = n.at("id").get<std::string>();
      node.kind = n.at("kind").get<std::string>();
      node.label = n.at("label").get<std::string>();
      node.level = n.at("level").get<int>();
      if (n.contains("unit")) node.unit = n["unit"].get<UnitId>();
      if (!n.at("parent").is_null()) node.parent = n["parent"].get<std::string>();
      if (node.kind == "cluster") {
        node.members = n.at("members").get<std::vector<std::string>>();
        if (!n.at("label_unit").is_null()) node.label_unit = n["label_unit"].get<UnitId>();
        node.external_links = n.at("external_links").get<std::size_t>();
      }
      v.nodes.push_back(std::move(node));
    }
    for (const json& e : j.at("edges")) {
      v.edges.push_back({e.at("source").get<std::string>(), e.at("target").get<std::string>(),
                         e.at("value").get<double>(), e.at("level").get<int>(),
                         e.at("s_edge").get<bool>()});
    }
    v.documents = j.at("documents").get<std::map<std::string, std::vector<std::string>>>();
    return v;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed graph view: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Exports

namespace {

std::string fixed3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else {
      out += c;
    }
  }
  out += '"';
  return out;
}

struct Hierarchy {
  std::map<std::string, const ViewNode*, std::less<>> by_id;
  std::vector<const ViewNode*> roots;  // top clusters, or units when unclustered

  explicit Hierarchy(const GraphView& v) {
    for (const ViewNode& n : v.nodes) by_id.emplace(n.id, &n);
    for (const ViewNode& n : v.nodes) {
      if (!n.parent.empty()) continue;
      if (v.view_level == 0 ? n.kind != "cluster" : n.kind == "cluster" && n.level == v.view_level) {
        roots.push_back(&n);
      }
    }
  }

  const ViewNode& at(std::string_view id) const {
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::invalid_argument, "view references unknown node '" + std::string(id) + "'");
    }
    return *it->second;
  }
};

void check_folded(const Hierarchy& h, const std::set<std::string>& folded) {
  for (const auto& id : folded) {
    const auto it = h.by_id.find(id);
    if (it == h.by_id.end() || it->second->kind != "cluster") {
      throw Error(ErrorCode::not_found, "cannot fold unknown cluster '" + id + "'");
    }
  }
}

void gdl_node(std::ostream& out, const Hierarchy& h, const ViewNode& n,
              const std::set<std::string>& folded, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (n.kind != "cluster") {
    out << pad << "node: { title: " << quote_string(n.label) << " label: " << quote_string(n.label) << " }\n";
    return;
  }
  out << pad << "graph: {\n";
  out << pad << "  title: " << quote_string(n.id) << "\n";
  out << pad << "  label: " << quote_string(n.label) << "\n";
  out << pad << "  folding: " << (folded.contains(n.id) ? 1 : 0) << "\n";
  for (const auto& m : n.members) gdl_node(out, h, h.at(m), folded, depth + 1);
  out << pad << "}\n";
}

void dot_node(std::ostream& out, const Hierarchy& h, const ViewNode& n, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  if (n.kind != "cluster") {
    out << pad << quote_string(n.label) << ";\n";
    return;
  }
  out << pad << "subgraph " << quote_string("cluster_" + n.id) << " {\n";
  out << pad << "  label=" << quote_string(n.label) << ";\n";
  for (const auto& m : n.members) dot_node(out, h, h.at(m), depth + 1);
  out << pad << "}\n";
}

}  // namespace

std::string export_gdl(const GraphView& v, const std::set<std::string>& folded) {
  const Hierarchy h(v);
  check_folded(h, folded);
  std::ostringstream out;
  out << "graph: {\n";
  out << "  title: \"assograph\"\n";
  for (const ViewNode* n : h.roots) gdl_node(out, h, *n, folded, 1);
  for (const ViewEdge& e : v.edges) {
    if (e.level != 0) continue;
    out << "  edge: { sourcename: " << quote_string(h.at(e.source).label)
        << " targetname: " << quote_string(h.at(e.target).label) << " label: \"" << fixed3(e.value) << "\"";
    if (e.s_edge) out << " thickness: 3";
    out << " }\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_dot(const GraphView& v) {
  const Hierarchy h(v);
  std::ostringstream out;
  out << "graph assograph {\n";
  for (const ViewNode* n : h.roots) dot_node(out, h, *n, 1);
  for (const ViewEdge& e : v.edges) {
    if (e.level != 0) continue;
    out << "  " << quote_string(h.at(e.source).label) << " -- " << quote_string(h.at(e.target).label)
        << " [label=\"" << fixed3(e.value) << "\"";
    if (e.s_edge) out << ", penwidth=2";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace assograph
