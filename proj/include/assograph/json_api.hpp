#pragma once

#include <string_view>

#include "json.hpp"

#include "assograph/artifact.hpp"
#include "assograph/corpus.hpp"

// JSON payloads shared by the HTTP service and the CLI.
namespace assograph {

nlohmann::json stats_json(const StatsReport& s);
nlohmann::json document_json(const Document& d);
nlohmann::json cluster_json(const ResultArtifact& r, std::string_view cluster_id);
/// Endpoints accept anything GraphArtifact::find_unit understands.
nlohmann::json path_json(const ResultArtifact& r, std::string_view from, std::string_view to);
nlohmann::json centrality_json(const ResultArtifact& r);

}  // namespace assograph
