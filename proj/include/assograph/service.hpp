#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "assograph/artifact.hpp"
#include "assograph/corpus.hpp"

namespace httplib {
class Server;
}

namespace assograph {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir = "assograph-data";
  std::optional<std::string> preload_corpus;  // record file ingested at startup
  std::size_t max_sync_documents = 50000;     // larger build requests get 413
};

/// Overrides from ASSOGRAPH_HOST, ASSOGRAPH_PORT, ASSOGRAPH_DATA and
/// ASSOGRAPH_MAX_SYNC_DOCS when set.
ServiceConfig apply_env_overrides(ServiceConfig config);

/// Content-addressed artifact storage: ids are digests of the canonical
/// serialization, files are `<data>/<id>.corpus` and `<data>/<id>.result`.
class ArtifactStore {
 public:
  explicit ArtifactStore(std::string data_dir);

  std::string put_corpus(const Corpus& c);
  std::string put_result(const ResultArtifact& r);
  std::shared_ptr<const Corpus> corpus(const std::string& id);
  std::shared_ptr<const ResultArtifact> result(const std::string& id);

  const std::string& data_dir() const noexcept { return data_dir_; }

 private:
  std::string path_for(const std::string& id, const char* ext) const;

  std::string data_dir_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const Corpus>> corpora_;
  std::map<std::string, std::shared_ptr<const ResultArtifact>> results_;
};

/// HTTP API over the store. Routes:
///   POST /corpora                              upload records
///   GET  /corpora/{id}/stats
///   POST /corpora/{id}/graphs                  build graph + clustering
///   GET  /corpora/{id}/units/{uid}/documents
///   GET  /corpora/{id}/documents/{docid}
///   GET  /graphs/{id}                          GraphView (optional ?level=)
///   GET  /graphs/{id}/clusters/{cid}
///   GET  /graphs/{id}/paths?from=&to=
///   GET  /graphs/{id}/centrality
/// Errors are JSON: {"error": {"code": ..., "message": ...}}.
class Service {
 public:
  /// Creates the data directory if needed; throws io_error when it is not a
  /// usable directory.
  explicit Service(ServiceConfig config);

  void install(httplib::Server& server);

  /// Binds and serves until stopped; throws io_error if the port is taken.
  void run();

  ArtifactStore& store() noexcept { return store_; }
  const ServiceConfig& config() const noexcept { return config_; }
  const std::optional<std::string>& preloaded_corpus_id() const noexcept { return preloaded_; }

 private:
  ServiceConfig config_;
  ArtifactStore store_;
  std::optional<std::string> preloaded_;
};

}  // namespace assograph
