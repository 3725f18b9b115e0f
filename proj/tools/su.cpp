// su: command-line front end for a semantic-unit store directory.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "semunit/compound.hpp"
#include "semunit/error.hpp"
#include "semunit/exploration.hpp"
#include "semunit/interop.hpp"
#include "semunit/partition.hpp"
#include "semunit/question.hpp"
#include "semunit/rdf_io.hpp"
#include "semunit/service.hpp"
#include "semunit/validate.hpp"
#include "semunit/vocab.hpp"

#include <yaml-cpp/yaml.h>

namespace fs = std::filesystem;
using namespace semunit;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::not_found, "cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error(ErrorCode::not_found, "cannot write " + out);
    f << text;
}

std::string build_summary(const std::map<UnitKind, BuildResult>& results) {
    YAML::Emitter out;
    out << YAML::BeginMap;
    for (const auto& [kind, r] : results) {
        out << YAML::Key << std::string(to_string(kind)) << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "units" << YAML::Value << r.units.size();
        out << YAML::Key << "created" << YAML::Value << r.created;
        out << YAML::Key << "updated" << YAML::Value << r.updated;
        out << YAML::Key << "retired" << YAML::Value << r.retired;
        if (!r.diagnostics.empty()) {
            out << YAML::Key << "diagnostics" << YAML::Value << YAML::BeginSeq;
            for (const auto& d : r.diagnostics) out << d;
            out << YAML::EndSeq;
        }
        out << YAML::EndMap;
    }
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semantic-unit knowledge graph tool"};
    app.require_subcommand(1);

    std::string store_dir;
    if (const char* env = std::getenv("SU_STORE")) store_dir = env;
    if (store_dir.empty()) store_dir = "su-store";
    std::optional<std::uint64_t> seed;
    std::string schemas_dir, now_text;
    app.add_option("--store", store_dir, "Store directory (default $SU_STORE or ./su-store)");
    app.add_option("--seed", seed, "Seed for GUPRI minting");
    app.add_option("--schemas", schemas_dir, "Schema file or directory to register (copied into the store)");
    app.add_option("--now", now_text, "Fixed clock for unit metadata (RFC 3339)");

    std::string input, out_path, unit, format = "trig", config_path, host = "127.0.0.1";
    bool report_only = false, sparql_only = false, save_question = false, flat = false;
    std::size_t top = 10;
    int port = 8080;

    auto* ingest = app.add_subcommand("ingest", "Partition an N-Triples/Turtle file into statement units");
    ingest->add_option("file", input, "RDF file")->required();
    ingest->add_option("--schemas", schemas_dir, "Schema file or directory");

    auto* partition = app.add_subcommand("partition", "Dry-run partition of an RDF file (nothing stored)");
    partition->add_option("file", input, "RDF file")->required();
    partition->add_option("--schemas", schemas_dir, "Schema file or directory");
    partition->add_flag("--report", report_only, "Print only the partition report");

    auto* build = app.add_subcommand("build", "Derive compound units");
    build->add_option("--config", config_path, "Build configuration (default: store build.yaml)");

    auto* query = app.add_subcommand("query", "Run a question file");
    query->add_option("file", input, "Question JSON")->required();
    query->add_flag("--sparql", sparql_only, "Print the emitted SPARQL instead of executing");
    query->add_flag("--save", save_question, "Register the question as a question unit");

    auto* exp = app.add_subcommand("export", "Export a unit or the whole store");
    exp->add_option("--unit", unit, "Unit GUPRI (omit with --format nquads for the whole store)");
    exp->add_option("--format", format, "trig | archive | nquads")
        ->check(CLI::IsMember({"trig", "archive", "nquads"}));
    exp->add_flag("--flat", flat, "Archive without nested manifests");
    exp->add_option("--out", out_path, "Output file (default stdout)");

    auto* imp = app.add_subcommand("import", "Import a nanopub (.trig) or container archive (.zip)");
    imp->add_option("file", input, "TriG or zip file")->required();

    auto* prof = app.add_subcommand("profile", "Print the store profile");
    prof->add_option("--top", top, "Entries per top-k list");

    auto* srv = app.add_subcommand("serve", "Serve the HTTP API");
    srv->add_option("--host", host, "Bind address");
    srv->add_option("--port", port, "Port");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        GraphConfig config;
        config.seed = seed ? *seed : std::random_device{}();
        Workspace ws = open_workspace(store_dir, config);
        KnowledgeGraph& kg = *ws.kg;
        if (!now_text.empty()) {
            Timestamp fixed = parse_rfc3339(now_text);
            kg.set_clock([fixed] { return fixed; });
        }
        if (!schemas_dir.empty()) add_schemas(ws, schemas_dir);

        if (*ingest) {
            std::cout << ingest_rdf(kg, input).to_yaml();
        } else if (*partition) {
            auto triples = parse_triples(read_file(input), syntax_for_path(input));
            Partition part = preview_partition(kg, std::move(triples));
            if (!report_only) {
                for (const auto& m : part.matches)
                    std::cout << m.schema->unit_class.str() << " " << m.subject.str() << " " << m.triples.size()
                              << "\n";
                for (const auto& t : part.generic) std::cout << "generic " << to_ntriples(t) << "\n";
            }
            std::cout << part.report.to_yaml();
        } else if (*build) {
            BuildConfig bc = config_path.empty() ? ws.build : load_build_config(config_path);
            std::cout << build_summary(build_all(kg, bc));
        } else if (*query) {
            Question q = question_from_json(nlohmann::json::parse(read_file(input)));
            QueryPlan plan = compile(q, kg.schemas(), kg.registry().layer_graph());
            if (save_question) std::cerr << "question unit " << register_question(kg, q).gupri.str() << "\n";
            if (sparql_only) std::cout << emit_sparql(plan);
            else std::cout << result_to_json(execute(plan, kg)).dump(2) << "\n";
        } else if (*exp) {
            if (format == "nquads") {
                write_output(export_nquads(kg), out_path);
            } else {
                if (unit.empty()) throw Error(ErrorCode::validation, "--unit is required for " + format);
                Iri g = vocab::expand(unit);
                if (format == "trig") write_output(export_nanopub(kg, g), out_path);
                else write_output(write_zip(export_container(kg, g, !flat)), out_path);
            }
        } else if (*imp) {
            std::string bytes = read_file(input);
            ImportResult r = fs::path(input).extension() == ".zip" ? import_container(kg, read_zip(bytes))
                                                                   : import_nanopub(kg, bytes);
            for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
            for (const auto& g : r.units) std::cout << g.str() << "\n";
        } else if (*prof) {
            std::cout << profile_to_json(profile(kg, top)).dump(2) << "\n";
        } else if (*srv) {
            Api api(kg, ws.build);
            std::cerr << "listening on " << host << ":" << port << "\n";
            serve(api, host, port);
        }
        kg.flush();
    } catch (const ParseError& e) {
        std::cerr << "error: " << (input.empty() ? "" : input + ": ") << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
        for (const auto& d : e.details()) std::cerr << "  " << d << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
