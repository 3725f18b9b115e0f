#pragma once

#include <filesystem>
#include <memory>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "semunit/compound.hpp"
#include "semunit/knowledge_graph.hpp"
#include "semunit/partition.hpp"

namespace semunit {
// Readable gtest failure output.
void PrintTo(const Iri& iri, std::ostream* os);
}  // namespace semunit

namespace semunit::testing {

std::filesystem::path data_dir();
std::string read_text(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);

// 2026-03-02T09:00:00Z
Timestamp fixture_time();

// Seeded minting and a fixed clock; shared schemas are loaded on request.
std::unique_ptr<KnowledgeGraph> make_kg(std::uint64_t seed = 7, bool with_schemas = true);
BuildConfig fixture_build_config();

Iri ex(const std::string& local);
Iri obo(const std::string& curie);  // "UO:0000021"
Iri suc(const std::string& local);

PartitionReport load_orchard(KnowledgeGraph& kg);

// Anatomy fixture plus the negated has-part statement of anatomy_negation.json.
struct AnatomyFixture {
    PartitionReport report;
    Iri negated_unit;
};
AnatomyFixture load_anatomy(KnowledgeGraph& kg);

// Scholarly fixture: ingest, a second reproduction-number estimate, all
// compound builders and the scholarly-article unit over the specimen items and
// the partonomy tree.
struct ScholarlyFixture {
    Iri article;
    Iri tree;
    Iri second_estimate;
};
ScholarlyFixture load_scholarly(KnowledgeGraph& kg);

// Item unit with the given subject (not_found otherwise).
Iri item_of(const KnowledgeGraph& kg, const Iri& subject);

// Statement unit of the class with the given subject (first by GUPRI).
Iri statement_of(const KnowledgeGraph& kg, const Iri& unit_class, const Iri& subject);

// Fresh empty directory under the system temp directory.
std::filesystem::path scratch_dir(const std::string& name);

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout only
};
CommandResult run_command(const std::string& command);

// Runs tools/rdf_oracle.py over a batch of jobs (see the script's usage).
nlohmann::json run_rdf_oracle(const nlohmann::json& jobs);
bool python_oracle_available();

}  // namespace semunit::testing
