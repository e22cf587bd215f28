#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "assograph/analysis.hpp"
#include "assograph/artifact.hpp"
#include "assograph/assoc_graph.hpp"
#include "assograph/corpus.hpp"
#include "assograph/cpcl.hpp"
#include "assograph/error.hpp"
#include "assograph/json_api.hpp"
#include "assograph/termvar.hpp"
#include "assograph/view.hpp"

namespace py = pybind11;
using namespace assograph;

namespace {

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

template <typename T, typename Reader>
T load(const std::string& path, Reader read) {
  std::istringstream in(read_file(path));
  return read(in);
}

Corpus with_terms(const Corpus& c, const std::string& mode,
                  const std::vector<std::pair<std::string, std::string>>& synonyms, bool skip_missing) {
  SynonymLexicon lex;
  for (const auto& [a, b] : synonyms) lex.add(a, b);
  return extract_corpus_terms(c, parse_term_mode(mode), lex, default_stopwords(), skip_missing);
}

py::dict levels_dict(const ClusteringResult& r) {
  py::list levels;
  for (int k = 1; k <= r.level_count(); ++k) {
    py::list clusters;
    for (std::size_t i = 0; i < r.level(k).clusters.size(); ++i) {
      const auto m = r.base_members({k, i});
      clusters.append(std::vector<UnitId>(m.begin(), m.end()));
    }
    levels.append(clusters);
  }
  py::dict out;
  out["levels"] = levels;
  out["termination"] = std::string(to_string(r.termination()));
  return out;
}

}  // namespace

PYBIND11_MODULE(_assograph, m) {
  m.doc() = "Association graphs over bibliographic records, CPCL clustering and analysis";

  // Module-lifetime exception type; subclass of ValueError with a `code`
  // attribute naming the error category.
  static PyObject* error_type = PyErr_NewException("assograph.Error", PyExc_ValueError, nullptr);
  m.attr("Error") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::handle(error_type)(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  m.def("normalize_author", [](const std::string& raw) {
    const AuthorKey k = normalize_author(raw);
    return py::make_tuple(k.surname, std::string(k.initials.begin(), k.initials.end()), k.render());
  }, py::arg("raw"), "Return (surname, initials, rendered key).");

  m.def("equivalence_coefficient", &equivalence_coefficient, py::arg("n_u"), py::arg("n_v"), py::arg("n_uv"));

  m.def("cpcl",
        [](const std::vector<NodeId>& vertices, const std::vector<std::tuple<NodeId, NodeId, double>>& edges,
           std::optional<int> max_levels) {
          std::vector<Edge> es;
          for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
          return levels_dict(cpcl(ValuedGraph(vertices, es), max_levels));
        },
        py::arg("vertices"), py::arg("edges"), py::arg("max_levels") = py::none(),
        "Cluster a valued graph; returns base-unit clusters per level and the termination reason.");

  py::class_<Corpus>(m, "Corpus")
      .def_static("parse", &parse_corpus_text, py::arg("text"), "Parse line-delimited JSON records.")
      .def_static("load", [](const std::string& path) { return load<Corpus>(path, read_corpus); },
                  py::arg("path"))
      .def("save", [](const Corpus& c, const std::string& path) { write_file_atomic(path, serialize(c)); },
           py::arg("path"))
      .def("serialize", [](const Corpus& c) { return serialize(c); })
      .def("stats", [](const Corpus& c) { return to_python(stats_json(corpus_stats(c))); })
      .def("with_terms", &with_terms, py::arg("mode") = "keywords",
           py::arg("synonyms") = std::vector<std::pair<std::string, std::string>>{},
           py::arg("skip_missing") = false)
      .def("document", [](const Corpus& c, const std::string& id) {
        const Document* d = c.find_document(id);
        if (d == nullptr) throw Error(ErrorCode::not_found, "unknown document '" + id + "'");
        return to_python(document_json(*d));
      }, py::arg("id"))
      .def("unit_documents", &unit_documents, py::arg("unit"))
      .def("units", [](const Corpus& c) {
        py::list out;
        for (const UnitInfo& u : c.registry().units()) out.append(py::make_tuple(std::string(to_string(u.kind)), u.form));
        return out;
      })
      .def_property_readonly("document_count", [](const Corpus& c) { return c.documents().size(); })
      .def_property_readonly("author_count", &Corpus::author_count)
      .def_property_readonly("term_count", &Corpus::term_count)
      .def("__len__", [](const Corpus& c) { return c.documents().size(); })
      .def("__eq__", [](const Corpus& a, const Corpus& b) { return a == b; });

  py::class_<GraphArtifact>(m, "Graph")
      .def_static("build",
                  [](const Corpus& c, const std::string& mode, std::optional<double> s) {
                    const GraphMode gm = parse_graph_mode(mode);
                    return build_graph_artifact(c, gm, s.value_or(default_threshold(gm)));
                  },
                  py::arg("corpus"), py::arg("mode") = "coauthor", py::arg("threshold") = py::none())
      .def_static("load", [](const std::string& path) { return load<GraphArtifact>(path, read_graph); },
                  py::arg("path"))
      .def("save", [](const GraphArtifact& g, const std::string& path) { write_file_atomic(path, serialize(g)); },
           py::arg("path"))
      .def("serialize", [](const GraphArtifact& g) { return serialize(g); })
      .def_property_readonly("mode", [](const GraphArtifact& g) { return std::string(to_string(g.mode)); })
      .def_property_readonly("threshold", [](const GraphArtifact& g) { return g.graph.threshold(); })
      .def_property_readonly("vertices", [](const GraphArtifact& g) {
        return std::vector<NodeId>(g.graph.graph().vertices().begin(), g.graph.graph().vertices().end());
      })
      .def_property_readonly("edges", [](const GraphArtifact& g) {
        std::vector<std::tuple<NodeId, NodeId, double>> out;
        for (const Edge& e : g.graph.graph().edges()) out.emplace_back(e.u, e.v, e.value);
        return out;
      })
      .def("label", [](const GraphArtifact& g, UnitId u) { return g.unit(u).label; }, py::arg("unit"))
      .def("cluster", [](GraphArtifact g, std::optional<int> levels) { return cluster_artifact(std::move(g), levels); },
           py::arg("levels") = py::none());

  py::class_<ResultArtifact>(m, "Result")
      .def_static("load", [](const std::string& path) { return load<ResultArtifact>(path, read_result); },
                  py::arg("path"))
      .def("save", [](const ResultArtifact& r, const std::string& path) { write_file_atomic(path, serialize(r)); },
           py::arg("path"))
      .def("serialize", [](const ResultArtifact& r) { return serialize(r); })
      .def("digest", [](const ResultArtifact& r) { return content_digest(serialize(r)); })
      .def_property_readonly("graph", [](const ResultArtifact& r) { return r.graph; })
      .def_property_readonly("level_count", [](const ResultArtifact& r) { return r.clustering.level_count(); })
      .def_property_readonly("termination",
                             [](const ResultArtifact& r) { return std::string(to_string(r.clustering.termination())); })
      .def("levels", [](const ResultArtifact& r) { return levels_dict(r.clustering)["levels"]; })
      .def("view", [](const ResultArtifact& r, std::optional<int> level) { return to_python(to_json(make_view(r, level))); },
           py::arg("level") = py::none())
      .def("cluster_subgraph", [](const ResultArtifact& r, const std::string& id) { return to_python(cluster_json(r, id)); },
           py::arg("cluster_id"))
      .def("path", [](const ResultArtifact& r, const std::string& a, const std::string& b) {
        return to_python(path_json(r, a, b));
      }, py::arg("source"), py::arg("target"))
      .def("centrality", [](const ResultArtifact& r) { return to_python(centrality_json(r)); })
      .def("export_gdl",
           [](const ResultArtifact& r, const std::set<std::string>& fold, std::optional<int> level) {
             return export_gdl(make_view(r, level), fold);
           },
           py::arg("fold") = std::set<std::string>{}, py::arg("level") = py::none())
      .def("export_dot", [](const ResultArtifact& r, std::optional<int> level) { return export_dot(make_view(r, level)); },
           py::arg("level") = py::none());
}
