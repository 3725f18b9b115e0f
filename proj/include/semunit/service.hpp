#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "semunit/compound.hpp"
#include "semunit/error.hpp"
#include "semunit/knowledge_graph.hpp"

namespace semunit {

// Store directory layout: log.nq (append-only quad log), schemas/*.yaml,
// optional build.yaml.
struct Workspace {
    std::filesystem::path root;
    std::unique_ptr<KnowledgeGraph> kg;
    BuildConfig build;
};

// Creates the directory when missing, loads schemas and build config, replays
// the log.
Workspace open_workspace(const std::filesystem::path& root, GraphConfig config = {});

// Copies schema files into the workspace and registers them.
void add_schemas(Workspace& ws, const std::filesystem::path& source);

int http_status(ErrorCode code);
nlohmann::json error_to_json(const Error& e);

struct ApiRequest {
    std::string method;  // GET or POST
    std::string path;    // decoded, without query
    std::map<std::string, std::string> query;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;

    nlohmann::json json() const { return nlohmann::json::parse(body); }
};

// Transport-free request dispatcher; the HTTP server is a thin shell around it.
// GET handlers run under a shared lock, POST handlers under the writer lock.
class Api {
public:
    explicit Api(KnowledgeGraph& kg, BuildConfig build = {}) : kg_(kg), build_(std::move(build)) {}

    ApiResponse handle(const ApiRequest& request);

    static constexpr std::size_t default_page = 100;

private:
    ApiResponse dispatch(const ApiRequest& request);

    KnowledgeGraph& kg_;
    BuildConfig build_;
};

// Blocks until stopped. Throws Error when the port cannot be bound.
void serve(Api& api, const std::string& host, int port);

}  // namespace semunit
