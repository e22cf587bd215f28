#include "assograph/artifact.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "json.hpp"

#include "assograph/error.hpp"
#include "assograph/text.hpp"

namespace assograph {

using nlohmann::json;

const UnitRecord& GraphArtifact::unit(UnitId id) const {
  const auto it = std::lower_bound(units.begin(), units.end(), id,
                                   [](const UnitRecord& r, UnitId x) { return r.id < x; });
  if (it == units.end() || it->id != id) {
    throw Error(ErrorCode::not_found, "unit " + std::to_string(id) + " not in graph");
  }
  return *it;
}

std::optional<UnitId> GraphArtifact::find_unit(std::string_view query) const {
  const std::string_view q = text::trim(query);
  if (q.empty()) return std::nullopt;
  std::string_view digits = q;
  if (digits.size() > 1 && digits.front() == 'u') digits.remove_prefix(1);
  UnitId id = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
  if (ec == std::errc{} && ptr == digits.data() + digits.size()) {
    return graph.graph().has_vertex(id) ? std::optional<UnitId>(id) : std::nullopt;
  }
  for (const UnitRecord& r : units) {
    if (r.label == q) return r.id;
  }
  try {
    const std::string rendered = normalize_author(q).render();
    for (const UnitRecord& r : units) {
      if (r.kind == UnitKind::author && r.label == rendered) return r.id;
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

GraphArtifact build_graph_artifact(const Corpus& c, GraphMode mode, double s) {
  const Hypergraph h = build_hypergraph(c, mode);
  ValuedGraph valued = derive_graph(h);
  GraphArtifact out;
  out.mode = mode;
  if (mode == GraphMode::term_author) {
    auto applied = apply_variant_valuation(valued, c.terms()->variants);
    valued = std::move(applied.graph);
    out.ignored_variant_links = applied.ignored_links;
  }
  out.graph = threshold(valued, s);
  std::map<UnitId, std::vector<std::string>> docs;
  for (const Hyperedge& e : h.edges()) {
    for (UnitId u : e.units) docs[u].push_back(e.doc_id);
  }
  for (NodeId v : out.graph.graph().vertices()) {
    const UnitInfo& info = c.registry().at(v);
    auto& d = docs[v];
    std::sort(d.begin(), d.end());
    out.units.push_back({v, info.kind, info.form, std::move(d)});
  }
  return out;
}

ResultArtifact cluster_artifact(GraphArtifact graph, std::optional<int> max_levels) {
  ClusteringResult r = cpcl(graph.graph, max_levels);
  return {std::move(graph), max_levels, std::move(r)};
}

// ---------------------------------------------------------------------------
// Serialization helpers

namespace {

constexpr int kVersion = 1;

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

json header(std::string_view format) {
  return json{{"type", "header"}, {"format", format}, {"version", kVersion}};
}

struct LineReader {
  std::istream& in;
  std::size_t line_no = 0;

  std::optional<json> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (text::trim(line).empty()) continue;
      try {
        json j = json::parse(line);
        if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
          fail("record without a type");
        }
        return j;
      } catch (const json::parse_error& e) {
        fail(std::string("malformed line: ") + e.what());
      }
    }
    return std::nullopt;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": " + what);
  }

  template <class T>
  T get(const json& j, const char* key) const {
    try {
      return j.at(key).get<T>();
    } catch (const json::exception& e) {
      fail(std::string("field '") + key + "': " + e.what());
    }
  }
};

json check_header(LineReader& r, std::string_view format) {
  auto h = r.next();
  if (!h || (*h)["type"] != "header") r.fail("missing header");
  if (r.get<std::string>(*h, "format") != format) {
    r.fail("expected format '" + std::string(format) + "'");
  }
  if (r.get<int>(*h, "version") != kVersion) r.fail("unsupported version");
  return *h;
}

json optional_json(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

// Graph and result files share the unit/edge section.
void write_graph_body(std::ostream& out, const GraphArtifact& g) {
  for (const UnitRecord& u : g.units) {
    emit(out, {{"type", "unit"},
               {"id", u.id},
               {"kind", to_string(u.kind)},
               {"label", u.label},
               {"documents", u.documents}});
  }
  for (const Edge& e : g.graph.graph().edges()) {
    emit(out, {{"type", "edge"}, {"u", e.u}, {"v", e.v}, {"value", e.value}});
  }
}

json graph_header(std::string_view format, const GraphArtifact& g) {
  json h = header(format);
  h["mode"] = to_string(g.mode);
  h["threshold"] = g.graph.threshold();
  h["ignored_variant_links"] = g.ignored_variant_links;
  if (!g.corpus_id.empty()) h["corpus"] = g.corpus_id;
  return h;
}

void read_graph_header(const LineReader& r, const json& h, GraphArtifact& g, double& s) {
  g.mode = parse_graph_mode(r.get<std::string>(h, "mode"));
  s = r.get<double>(h, "threshold");
  g.ignored_variant_links = r.get<std::size_t>(h, "ignored_variant_links");
  if (h.contains("corpus")) g.corpus_id = r.get<std::string>(h, "corpus");
}

}  // namespace

// ---------------------------------------------------------------------------
// Corpus

void write_corpus(std::ostream& out, const Corpus& c) {
  json h = header("assograph.corpus");
  h["term_mode"] = c.terms() ? json(to_string(c.terms()->mode)) : json(nullptr);
  emit(out, h);
  for (std::size_t i = 0; i < c.registry().size(); ++i) {
    const UnitInfo& u = c.registry().at(static_cast<UnitId>(i));
    if (u.kind == UnitKind::author) {
      emit(out, {{"type", "unit"}, {"id", i}, {"kind", "author"}, {"form", u.form}});
    }
  }
  if (c.terms()) {
    for (const Term& t : c.terms()->terms) {
      emit(out, {{"type", "term"}, {"id", t.id}, {"tokens", t.tokens}, {"surface", t.surface_forms}});
    }
    for (const VariantLink& l : c.terms()->variants) {
      emit(out, {{"type", "variant"}, {"u", l.u}, {"v", l.v}, {"kind", to_string(l.kind)}});
    }
  }
  for (const Document& d : c.documents()) {
    json j{{"type", "document"},    {"id", d.id},
           {"authors", d.raw_authors}, {"tags", d.tags},
           {"author_units", d.author_units}, {"term_units", d.term_units},
           {"title", optional_json(d.title)},
           {"abstract", optional_json(d.abstract_text)}};
    j["keywords"] = d.keywords ? json(*d.keywords) : json(nullptr);
    j["year"] = d.year ? json(*d.year) : json(nullptr);
    emit(out, j);
  }
}

Corpus read_corpus(std::istream& in) {
  LineReader r{in};
  const json h = check_header(r, "assograph.corpus");
  std::optional<TermIndex> terms;
  if (!h["term_mode"].is_null()) {
    terms.emplace();
    terms->mode = parse_term_mode(r.get<std::string>(h, "term_mode"));
  }
  std::map<UnitId, UnitInfo> units;
  std::vector<Document> docs;
  while (auto j = r.next()) {
    const std::string type = (*j)["type"];
    if (type == "unit") {
      units[r.get<UnitId>(*j, "id")] = {parse_unit_kind(r.get<std::string>(*j, "kind")),
                                        r.get<std::string>(*j, "form")};
    } else if (type == "term") {
      if (!terms) r.fail("term record without term_mode");
      Term t{r.get<UnitId>(*j, "id"), r.get<std::vector<std::string>>(*j, "tokens"),
             r.get<std::vector<std::string>>(*j, "surface")};
      units[t.id] = {UnitKind::term, t.form()};
      terms->terms.push_back(std::move(t));
    } else if (type == "variant") {
      if (!terms) r.fail("variant record without term_mode");
      terms->variants.push_back({r.get<UnitId>(*j, "u"), r.get<UnitId>(*j, "v"),
                                 parse_variant_kind(r.get<std::string>(*j, "kind"))});
    } else if (type == "document") {
      Document d;
      d.id = r.get<std::string>(*j, "id");
      d.raw_authors = r.get<std::vector<std::string>>(*j, "authors");
      d.tags = r.get<std::vector<std::string>>(*j, "tags");
      d.author_units = r.get<std::vector<UnitId>>(*j, "author_units");
      d.term_units = r.get<std::vector<UnitId>>(*j, "term_units");
      if (!(*j)["title"].is_null()) d.title = r.get<std::string>(*j, "title");
      if (!(*j)["abstract"].is_null()) d.abstract_text = r.get<std::string>(*j, "abstract");
      if (!(*j)["keywords"].is_null()) d.keywords = r.get<std::vector<std::string>>(*j, "keywords");
      if (!(*j)["year"].is_null()) d.year = r.get<int>(*j, "year");
      docs.push_back(std::move(d));
    } else {
      r.fail("unexpected record type '" + type + "'");
    }
  }
  std::vector<UnitInfo> dense;
  for (const auto& [id, info] : units) {
    if (id != dense.size()) r.fail("unit ids are not dense");
    dense.push_back(info);
  }
  if (terms) {
    std::sort(terms->terms.begin(), terms->terms.end(),
              [](const Term& a, const Term& b) { return a.id < b.id; });
  }
  return Corpus(std::move(docs), UnitRegistry(std::move(dense)), std::move(terms));
}

// ---------------------------------------------------------------------------
// Graph

void write_graph(std::ostream& out, const GraphArtifact& g) {
  emit(out, graph_header("assograph.graph", g));
  write_graph_body(out, g);
}

namespace {

// Consumes unit/edge records; returns the first record of another type.
std::optional<json> read_graph_body(LineReader& r, GraphArtifact& g, double s) {
  std::vector<NodeId> vertices;
  std::vector<Edge> edges;
  std::optional<json> rest;
  while (auto j = r.next()) {
    const std::string type = (*j)["type"];
    if (type == "unit") {
      UnitRecord u{r.get<UnitId>(*j, "id"), parse_unit_kind(r.get<std::string>(*j, "kind")),
                   r.get<std::string>(*j, "label"),
                   r.get<std::vector<std::string>>(*j, "documents")};
      vertices.push_back(u.id);
      g.units.push_back(std::move(u));
    } else if (type == "edge") {
      edges.push_back({r.get<NodeId>(*j, "u"), r.get<NodeId>(*j, "v"), r.get<double>(*j, "value")});
    } else {
      rest = std::move(j);
      break;
    }
  }
  std::sort(g.units.begin(), g.units.end(),
            [](const UnitRecord& a, const UnitRecord& b) { return a.id < b.id; });
  g.graph = ThresholdedGraph::from_retained(ValuedGraph(std::move(vertices), std::move(edges)), s);
  return rest;
}

}  // namespace

GraphArtifact read_graph(std::istream& in) {
  LineReader r{in};
  const json h = check_header(r, "assograph.graph");
  GraphArtifact g;
  double s = 0.0;
  read_graph_header(r, h, g, s);
  if (auto extra = read_graph_body(r, g, s)) {
    r.fail("unexpected record type '" + (*extra)["type"].get<std::string>() + "'");
  }
  return g;
}

// ---------------------------------------------------------------------------
// Result

void write_result(std::ostream& out, const ResultArtifact& res) {
  json h = graph_header("assograph.result", res.graph);
  h["max_levels"] = res.max_levels ? json(*res.max_levels) : json(nullptr);
  h["termination"] = to_string(res.clustering.termination());
  emit(out, h);
  write_graph_body(out, res.graph);
  const auto levels = res.clustering.levels();
  const auto reduced = res.clustering.reduced_graphs();
  for (std::size_t k = 0; k < levels.size(); ++k) {
    json s_edges = json::array();
    for (const VertexPair& p : levels[k].s_edges) s_edges.push_back({p.u, p.v});
    emit(out, {{"type", "level"},
               {"level", levels[k].level},
               {"merged", levels[k].merged},
               {"clusters", levels[k].clusters},
               {"s_edges", s_edges}});
    json edges = json::array();
    for (const Edge& e : reduced[k].edges()) edges.push_back({e.u, e.v, e.value});
    emit(out, {{"type", "reduced"},
               {"level", levels[k].level},
               {"vertices", reduced[k].vertex_count()},
               {"edges", edges}});
  }
}

ResultArtifact read_result(std::istream& in) {
  LineReader r{in};
  const json h = check_header(r, "assograph.result");
  ResultArtifact res;
  double s = 0.0;
  read_graph_header(r, h, res.graph, s);
  if (!h["max_levels"].is_null()) res.max_levels = r.get<int>(h, "max_levels");
  const Termination termination = parse_termination(r.get<std::string>(h, "termination"));
  std::vector<PartitionLevel> levels;
  std::vector<ValuedGraph> reduced;
  auto j = read_graph_body(r, res.graph, s);
  for (; j; j = r.next()) {
    const std::string type = (*j)["type"];
    if (type == "level") {
      PartitionLevel p;
      p.level = r.get<int>(*j, "level");
      p.merged = r.get<bool>(*j, "merged");
      p.clusters = r.get<std::vector<std::vector<NodeId>>>(*j, "clusters");
      for (const auto& pair : r.get<std::vector<std::array<NodeId, 2>>>(*j, "s_edges")) {
        p.s_edges.push_back(VertexPair::of(pair[0], pair[1]));
      }
      levels.push_back(std::move(p));
    } else if (type == "reduced") {
      const auto n = r.get<std::size_t>(*j, "vertices");
      std::vector<NodeId> vertices(n);
      for (std::size_t i = 0; i < n; ++i) vertices[i] = static_cast<NodeId>(i);
      std::vector<Edge> edges;
      for (const json& e : j->at("edges")) {
        edges.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>(), e.at(2).get<double>()});
      }
      reduced.emplace_back(std::move(vertices), std::move(edges));
    } else {
      r.fail("unexpected record type '" + type + "'");
    }
  }
  std::vector<NodeId> base(res.graph.graph.graph().vertices().begin(),
                           res.graph.graph.graph().vertices().end());
  res.clustering = ClusteringResult(std::move(base), std::move(levels), std::move(reduced), termination);
  return res;
}

std::string serialize(const Corpus& c) {
  std::ostringstream out;
  write_corpus(out, c);
  return out.str();
}

std::string serialize(const GraphArtifact& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

std::string serialize(const ResultArtifact& r) {
  std::ostringstream out;
  write_result(out, r);
  return out.str();
}

// ---------------------------------------------------------------------------
// Files

std::string content_digest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::io_error, "SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < 8 && i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  static std::atomic<unsigned> counter{0};
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." +
         std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::io_error, "short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::io_error, "cannot rename into '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace assograph
