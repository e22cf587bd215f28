// assograph: command-line front end for ingest -> terms -> graph -> cluster ->
// inspect/path/export, plus the HTTP service.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "assograph/artifact.hpp"
#include "assograph/error.hpp"
#include "assograph/json_api.hpp"
#include "assograph/service.hpp"
#include "assograph/termvar.hpp"
#include "assograph/view.hpp"

namespace {

using namespace assograph;

template <class T, class Reader>
T load(const std::string& path, Reader read) {
  std::istringstream in(read_file(path));
  return read(in);
}

void write_or_print(const std::optional<std::string>& out_path, const std::string& content) {
  if (out_path) {
    write_file_atomic(*out_path, content);
  } else {
    std::cout << content;
  }
}

std::set<std::string> split_ids(const std::string& csv) {
  std::set<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Association graph extraction, CPCL clustering and exploration"};
  app.require_subcommand(1);

  // ingest
  std::string ingest_in;
  std::string ingest_out;
  auto* ingest = app.add_subcommand("ingest", "Parse line-delimited bibliographic records");
  ingest->add_option("file", ingest_in, "Record file (one JSON object per line)")->required();
  ingest->add_option("--out", ingest_out, "Corpus file to write")->required();

  // stats
  std::string stats_in;
  auto* stats = app.add_subcommand("stats", "Print corpus statistics");
  stats->add_option("corpus", stats_in, "Corpus file")->required();

  // terms
  std::string terms_in;
  std::string terms_mode = "keywords";
  std::string terms_synonyms;
  std::optional<std::string> terms_out;
  bool terms_skip = false;
  auto* terms = app.add_subcommand("terms", "Extract terms and variant links into a corpus file");
  terms->add_option("corpus", terms_in, "Corpus file")->required();
  terms->add_option("--mode", terms_mode, "Extraction mode")
      ->check(CLI::IsMember({"keywords", "naive_np"}));
  terms->add_option("--synonyms", terms_synonyms, "Tab-separated synonym lexicon");
  terms->add_option("--out", terms_out, "Output corpus file (default: rewrite input)");
  terms->add_flag("--skip-missing", terms_skip, "Skip documents lacking the mode's source field");

  // graph
  std::string graph_in;
  std::string graph_mode = "coauthor";
  std::optional<double> graph_s;
  std::string graph_out;
  auto* graph = app.add_subcommand("graph", "Build the thresholded association graph");
  graph->add_option("corpus", graph_in, "Corpus file")->required();
  graph->add_option("--mode", graph_mode, "Graph mode")
      ->check(CLI::IsMember({"coauthor", "term_author"}));
  graph->add_option("--threshold", graph_s, "Keep edges valued strictly above s (default 0 / 0.8)");
  graph->add_option("--out", graph_out, "Graph file to write")->required();

  // cluster
  std::string cluster_in;
  std::optional<int> cluster_levels;
  std::string cluster_out;
  auto* cluster = app.add_subcommand("cluster", "Run CPCL on a graph file");
  cluster->add_option("graph", cluster_in, "Graph file")->required();
  cluster->add_option("--levels", cluster_levels, "Maximum number of levels (default: fixpoint)")
      ->check(CLI::PositiveNumber);
  cluster->add_option("--out", cluster_out, "Result file to write")->required();

  // inspect
  std::string inspect_in;
  std::string inspect_cluster;
  auto* inspect = app.add_subcommand("inspect", "Show a cluster's internal subgraph and boundary");
  inspect->add_option("result", inspect_in, "Result file")->required();
  inspect->add_option("--cluster", inspect_cluster, "Cluster id, e.g. L1_0")->required();

  // path
  std::string path_in;
  std::string path_from;
  std::string path_to;
  auto* path = app.add_subcommand("path", "Strongest (bottleneck-optimal) path between two units");
  path->add_option("result", path_in, "Result file")->required();
  path->add_option("--from", path_from, "Unit id (u12 / 12), label or author name")->required();
  path->add_option("--to", path_to, "Unit id (u12 / 12), label or author name")->required();

  // export
  std::string export_in;
  std::string export_format = "gdl";
  std::string export_fold;
  std::optional<int> export_level;
  std::optional<std::string> export_out;
  auto* exp = app.add_subcommand("export", "Export a clustered graph as GDL or DOT");
  exp->add_option("result", export_in, "Result file")->required();
  exp->add_option("--format", export_format, "Output format")->check(CLI::IsMember({"gdl", "dot"}));
  exp->add_option("--fold", export_fold, "Comma-separated cluster ids to fold (GDL)");
  exp->add_option("--level", export_level, "Highest cluster level to include");
  exp->add_option("--out", export_out, "Output file (default: stdout)");

  // serve
  ServiceConfig config;
  std::optional<std::string> preload;
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--port", config.port, "TCP port (env ASSOGRAPH_PORT)");
  serve->add_option("--data", config.data_dir, "Artifact directory (env ASSOGRAPH_DATA)");
  serve->add_option("--host", config.host, "Bind address (env ASSOGRAPH_HOST)");
  serve->add_option("--preload", preload, "Record file to ingest at startup");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      const Corpus c = load<Corpus>(ingest_in, [](std::istream& in) { return parse_corpus(in); });
      write_file_atomic(ingest_out, serialize(c));
      std::cerr << c.documents().size() << " documents, " << c.author_count() << " authors\n";
    } else if (*stats) {
      const Corpus c = load<Corpus>(stats_in, [](std::istream& in) { return read_corpus(in); });
      std::cout << stats_json(corpus_stats(c)).dump(2) << "\n";
    } else if (*terms) {
      const Corpus c = load<Corpus>(terms_in, [](std::istream& in) { return read_corpus(in); });
      SynonymLexicon lexicon;
      if (!terms_synonyms.empty()) {
        lexicon = load<SynonymLexicon>(terms_synonyms,
                                       [](std::istream& in) { return SynonymLexicon::load(in); });
      }
      const Corpus out =
          extract_corpus_terms(c, parse_term_mode(terms_mode), lexicon, default_stopwords(), terms_skip);
      write_file_atomic(terms_out.value_or(terms_in), serialize(out));
      std::cerr << out.term_count() << " terms, " << out.terms()->variants.size() << " variant links\n";
    } else if (*graph) {
      const Corpus c = load<Corpus>(graph_in, [](std::istream& in) { return read_corpus(in); });
      const GraphMode mode = parse_graph_mode(graph_mode);
      const GraphArtifact g = build_graph_artifact(c, mode, graph_s.value_or(default_threshold(mode)));
      write_file_atomic(graph_out, serialize(g));
      std::cerr << g.graph.graph().vertex_count() << " vertices, " << g.graph.graph().edge_count()
                << " edges above " << g.graph.threshold() << "\n";
      if (g.ignored_variant_links > 0) {
        std::cerr << "warning: " << g.ignored_variant_links
                  << " variant links had no co-occurrence edge and were ignored\n";
      }
    } else if (*cluster) {
      GraphArtifact g = load<GraphArtifact>(cluster_in, [](std::istream& in) { return read_graph(in); });
      const ResultArtifact r = cluster_artifact(std::move(g), cluster_levels);
      write_file_atomic(cluster_out, serialize(r));
      std::cerr << r.clustering.level_count() << " levels, "
                << r.clustering.levels().back().clusters.size() << " top-level clusters ("
                << to_string(r.clustering.termination()) << ")\n";
    } else if (*inspect) {
      const ResultArtifact r = load<ResultArtifact>(inspect_in, [](std::istream& in) { return read_result(in); });
      std::cout << cluster_json(r, inspect_cluster).dump(2) << "\n";
    } else if (*path) {
      const ResultArtifact r = load<ResultArtifact>(path_in, [](std::istream& in) { return read_result(in); });
      std::cout << path_json(r, path_from, path_to).dump(2) << "\n";
    } else if (*exp) {
      const ResultArtifact r = load<ResultArtifact>(export_in, [](std::istream& in) { return read_result(in); });
      const GraphView view = make_view(r, export_level);
      write_or_print(export_out, export_format == "gdl" ? export_gdl(view, split_ids(export_fold))
                                                        : export_dot(view));
    } else if (*serve) {
      // Explicit flags win over the environment.
      ServiceConfig effective = apply_env_overrides(ServiceConfig{});
      if (serve->count("--port") > 0) effective.port = config.port;
      if (serve->count("--data") > 0) effective.data_dir = config.data_dir;
      if (serve->count("--host") > 0) effective.host = config.host;
      effective.preload_corpus = preload;
      Service service(effective);
      service.run();
    }
  } catch (const Error& e) {
    std::cerr << "assograph: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "assograph: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
