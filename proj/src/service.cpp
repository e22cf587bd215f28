#include "assograph/service.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"

#include "assograph/analysis.hpp"
#include "assograph/error.hpp"
#include "assograph/json_api.hpp"
#include "assograph/termvar.hpp"
#include "assograph/text.hpp"
#include "assograph/view.hpp"

namespace assograph {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

template <typename T>
T env_number(const char* name, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::invalid_argument, std::string(name) + " must be a number, got '" + std::string(v) + "'");
  }
  return out;
}

}  // namespace

ServiceConfig apply_env_overrides(ServiceConfig config) {
  if (const char* v = std::getenv("ASSOGRAPH_HOST"); v && *v) config.host = v;
  if (const char* v = std::getenv("ASSOGRAPH_PORT"); v && *v) {
    config.port = env_number<int>("ASSOGRAPH_PORT", v);
  }
  if (const char* v = std::getenv("ASSOGRAPH_DATA"); v && *v) config.data_dir = v;
  if (const char* v = std::getenv("ASSOGRAPH_MAX_SYNC_DOCS"); v && *v) {
    config.max_sync_documents = env_number<std::size_t>("ASSOGRAPH_MAX_SYNC_DOCS", v);
  }
  return config;
}

// ---------------------------------------------------------------------------
// Store

ArtifactStore::ArtifactStore(std::string data_dir) : data_dir_(std::move(data_dir)) {
  std::error_code ec;
  fs::create_directories(data_dir_, ec);
  if (!fs::is_directory(data_dir_, ec)) {
    throw Error(ErrorCode::io_error, "data directory '" + data_dir_ + "' is not usable");
  }
  const fs::path probe = fs::path(data_dir_) / ".write-probe";
  try {
    write_file_atomic(probe.string(), "");
  } catch (const Error&) {
    throw Error(ErrorCode::io_error, "data directory '" + data_dir_ + "' is not writable");
  }
  fs::remove(probe, ec);
}

std::string ArtifactStore::path_for(const std::string& id, const char* ext) const {
  return (fs::path(data_dir_) / (id + ext)).string();
}

namespace {

bool valid_id(const std::string& id) {
  return id.size() == 16 && std::all_of(id.begin(), id.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

}  // namespace

std::string ArtifactStore::put_corpus(const Corpus& c) {
  const std::string bytes = serialize(c);
  const std::string id = content_digest(bytes);
  std::lock_guard lock(mutex_);
  if (!corpora_.contains(id)) {
    if (!fs::exists(path_for(id, ".corpus"))) write_file_atomic(path_for(id, ".corpus"), bytes);
    corpora_.emplace(id, std::make_shared<const Corpus>(c));
  }
  return id;
}

std::string ArtifactStore::put_result(const ResultArtifact& r) {
  const std::string bytes = serialize(r);
  const std::string id = content_digest(bytes);
  std::lock_guard lock(mutex_);
  if (!results_.contains(id)) {
    if (!fs::exists(path_for(id, ".result"))) write_file_atomic(path_for(id, ".result"), bytes);
    results_.emplace(id, std::make_shared<const ResultArtifact>(r));
  }
  return id;
}

std::shared_ptr<const Corpus> ArtifactStore::corpus(const std::string& id) {
  if (!valid_id(id)) return nullptr;
  std::lock_guard lock(mutex_);
  if (auto it = corpora_.find(id); it != corpora_.end()) return it->second;
  const std::string path = path_for(id, ".corpus");
  if (!fs::exists(path)) return nullptr;
  std::istringstream in(read_file(path));
  auto c = std::make_shared<const Corpus>(read_corpus(in));
  corpora_.emplace(id, c);
  return c;
}

std::shared_ptr<const ResultArtifact> ArtifactStore::result(const std::string& id) {
  if (!valid_id(id)) return nullptr;
  std::lock_guard lock(mutex_);
  if (auto it = results_.find(id); it != results_.end()) return it->second;
  const std::string path = path_for(id, ".result");
  if (!fs::exists(path)) return nullptr;
  std::istringstream in(read_file(path));
  auto r = std::make_shared<const ResultArtifact>(read_result(in));
  results_.emplace(id, r);
  return r;
}

// ---------------------------------------------------------------------------
// HTTP

namespace {

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::parse_error: return 400;
    case ErrorCode::not_found: return 404;
    case ErrorCode::duplicate_id: return 409;
    case ErrorCode::too_large: return 413;
    case ErrorCode::precondition: return 422;
    case ErrorCode::io_error: return 500;
  }
  return 500;
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  send_json(res, status_for(code),
            {{"error", {{"code", std::string(to_string(code))}, {"message", message}}}});
}

/// Runs a handler, turning library errors into JSON error responses.
template <class F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const json::exception& e) {
      send_error(res, ErrorCode::invalid_argument, std::string("bad request body: ") + e.what());
    } catch (const std::exception& e) {
      send_error(res, ErrorCode::io_error, e.what());
    }
  };
}

json parse_body(const httplib::Request& req) {
  if (text::trim(req.body).empty()) return json::object();
  try {
    json j = json::parse(req.body);
    if (!j.is_object()) throw Error(ErrorCode::invalid_argument, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed JSON body: ") + e.what());
  }
}

SynonymLexicon lexicon_from(const json& terms) {
  SynonymLexicon lex;
  if (terms.contains("synonyms")) {
    for (const json& pair : terms.at("synonyms")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw Error(ErrorCode::invalid_argument, "synonyms must be a list of [a, b] pairs");
      }
      lex.add(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  }
  return lex;
}

Corpus with_terms(const Corpus& c, const json& terms) {
  const TermMode mode = parse_term_mode(terms.value("mode", std::string("keywords")));
  return extract_corpus_terms(c, mode, lexicon_from(terms), default_stopwords(),
                              terms.value("skip_missing", false));
}

UnitId parse_unit_id(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && digits.front() == 'u') digits.remove_prefix(1);
  UnitId id = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw Error(ErrorCode::invalid_argument, "malformed unit id '" + std::string(s) + "'");
  }
  return id;
}

}  // namespace

Service::Service(ServiceConfig config) : config_(std::move(config)), store_(config_.data_dir) {
  if (config_.preload_corpus) {
    std::istringstream in(read_file(*config_.preload_corpus));
    preloaded_ = store_.put_corpus(parse_corpus(in));
  }
}

void Service::install(httplib::Server& server) {
  auto require_corpus = [this](const std::string& id) {
    auto c = store_.corpus(id);
    if (!c) throw Error(ErrorCode::not_found, "unknown corpus '" + id + "'");
    return c;
  };
  auto require_result = [this](const std::string& id) {
    auto r = store_.result(id);
    if (!r) throw Error(ErrorCode::not_found, "unknown graph '" + id + "'");
    return r;
  };

  server.Post("/corpora", guarded([this](const httplib::Request& req, httplib::Response& res) {
    Corpus c;
    std::optional<json> envelope;
    if (req.get_header_value("Content-Type").starts_with("application/json")) {
      try {
        json j = json::parse(req.body);
        if (j.is_object() && j.contains("records")) envelope = std::move(j);
      } catch (const json::parse_error&) {
        // Not a single JSON document: treat as line-delimited records.
      }
    }
    if (envelope) {
      const json& records = envelope->at("records");
      if (records.is_string()) {
        c = parse_corpus_text(records.get<std::string>());
      } else if (records.is_array()) {
        std::string lines;
        for (const json& r : records) lines += r.dump() + "\n";
        c = parse_corpus_text(lines);
      } else {
        throw Error(ErrorCode::invalid_argument, "'records' must be a string or an array");
      }
      if (envelope->contains("terms")) c = with_terms(c, envelope->at("terms"));
    } else {
      c = parse_corpus_text(req.body);
    }
    if (c.documents().size() > config_.max_sync_documents) {
      throw Error(ErrorCode::too_large, "corpus exceeds the synchronous size limit");
    }
    const std::string id = store_.put_corpus(c);
    json body = stats_json(corpus_stats(c));
    body["id"] = id;
    send_json(res, 201, body);
  }));

  server.Get(R"(/corpora/([^/]+)/stats)",
             guarded([require_corpus](const httplib::Request& req, httplib::Response& res) {
               auto c = require_corpus(req.matches[1]);
               json body = stats_json(corpus_stats(*c));
               body["id"] = std::string(req.matches[1]);
               send_json(res, 200, body);
             }));

  server.Post(R"(/corpora/([^/]+)/graphs)",
              guarded([this, require_corpus](const httplib::Request& req, httplib::Response& res) {
                auto c = require_corpus(req.matches[1]);
                std::string corpus_id = req.matches[1];
                const json body = parse_body(req);
                const GraphMode mode = parse_graph_mode(body.value("mode", std::string("coauthor")));
                const double s = body.contains("threshold") && !body["threshold"].is_null()
                                     ? body["threshold"].get<double>()
                                     : default_threshold(mode);
                std::optional<int> levels;
                if (body.contains("levels") && !body["levels"].is_null()) {
                  levels = body["levels"].get<int>();
                }
                if (c->documents().size() > config_.max_sync_documents) {
                  throw Error(ErrorCode::too_large, "corpus exceeds the synchronous build limit");
                }
                if (body.contains("terms") && !body["terms"].is_null()) {
                  auto derived = std::make_shared<const Corpus>(with_terms(*c, body["terms"]));
                  corpus_id = store_.put_corpus(*derived);
                  c = derived;
                }
                GraphArtifact g = build_graph_artifact(*c, mode, s);
                g.corpus_id = corpus_id;
                const ResultArtifact r = cluster_artifact(std::move(g), levels);
                const std::string id = store_.put_result(r);
                send_json(res, 201,
                          {{"id", id},
                           {"corpus", corpus_id},
                           {"mode", to_string(mode)},
                           {"threshold", s},
                           {"vertices", r.graph.graph.graph().vertex_count()},
                           {"edges", r.graph.graph.graph().edge_count()},
                           {"levels", r.clustering.level_count()},
                           {"termination", to_string(r.clustering.termination())}});
              }));

  server.Get(R"(/corpora/([^/]+)/units/([^/]+)/documents)",
             guarded([require_corpus](const httplib::Request& req, httplib::Response& res) {
               auto c = require_corpus(req.matches[1]);
               const UnitId u = parse_unit_id(std::string(req.matches[2]));
               const auto docs = unit_documents(*c, u);
               const UnitInfo& info = c->registry().at(u);
               send_json(res, 200,
                         {{"unit", u},
                          {"kind", to_string(info.kind)},
                          {"label", info.form},
                          {"documents", docs}});
             }));

  server.Get(R"(/corpora/([^/]+)/documents/([^/]+))",
             guarded([require_corpus](const httplib::Request& req, httplib::Response& res) {
               auto c = require_corpus(req.matches[1]);
               const std::string doc_id = httplib::detail::decode_url(req.matches[2], false);
               const Document* d = c->find_document(doc_id);
               if (d == nullptr) throw Error(ErrorCode::not_found, "unknown document '" + doc_id + "'");
               send_json(res, 200, document_json(*d));
             }));

  server.Get(R"(/graphs/([^/]+))",
             guarded([require_result](const httplib::Request& req, httplib::Response& res) {
               auto r = require_result(req.matches[1]);
               std::optional<int> level;
               if (req.has_param("level")) {
                 const std::string v = req.get_param_value("level");
                 int k = 0;
                 const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), k);
                 if (ec != std::errc{} || ptr != v.data() + v.size()) {
                   throw Error(ErrorCode::invalid_argument, "malformed level '" + v + "'");
                 }
                 level = k;
               }
               json body = to_json(make_view(*r, level));
               body["id"] = std::string(req.matches[1]);
               body["corpus"] = r->graph.corpus_id;
               send_json(res, 200, body);
             }));

  server.Get(R"(/graphs/([^/]+)/clusters/([^/]+))",
             guarded([require_result](const httplib::Request& req, httplib::Response& res) {
               auto r = require_result(req.matches[1]);
               send_json(res, 200, cluster_json(*r, std::string(req.matches[2])));
             }));

  server.Get(R"(/graphs/([^/]+)/paths)",
             guarded([require_result](const httplib::Request& req, httplib::Response& res) {
               auto r = require_result(req.matches[1]);
               if (!req.has_param("from") || !req.has_param("to")) {
                 throw Error(ErrorCode::invalid_argument, "query parameters 'from' and 'to' are required");
               }
               send_json(res, 200,
                         path_json(*r, req.get_param_value("from"), req.get_param_value("to")));
             }));

  server.Get(R"(/graphs/([^/]+)/centrality)",
             guarded([require_result](const httplib::Request& req, httplib::Response& res) {
               auto r = require_result(req.matches[1]);
               send_json(res, 200, centrality_json(*r));
             }));

  server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
    if (res.status == 404 && res.body.empty()) {
      send_error(res, ErrorCode::not_found, "no route for " + req.method + " " + req.path);
    }
  });
}

void Service::run() {
  httplib::Server server;
  // httplib defaults to SO_REUSEPORT, which lets a second server share a
  // port that is already taken.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  install(server);
  if (!server.bind_to_port(config_.host, config_.port)) {
    throw Error(ErrorCode::io_error, "cannot bind " + config_.host + ":" + std::to_string(config_.port));
  }
  std::cerr << "assograph: serving " << config_.data_dir << " on http://" << config_.host << ":"
            << config_.port << "\n";
  if (preloaded_) std::cerr << "assograph: preloaded corpus " << *preloaded_ << "\n";
  server.listen_after_bind();
}

}  // namespace assograph
