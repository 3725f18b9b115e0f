#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "semunit/knowledge_graph.hpp"
#include "semunit/partition.hpp"

namespace semunit {

// ---- nanopublications

// Four graphs in order: head, assertion (the unit's data graph), provenance,
// pubinfo. Pubinfo carries the unit's layer description, its rendered label,
// declared kinds of the mentioned resources and their type/label annotations.
std::string export_nanopub(const KnowledgeGraph& kg, const Iri& gupri);

struct ImportResult {
    std::vector<Iri> units;
    std::vector<std::string> warnings;
};

// Unknown schema_ref -> imported without schema plus warning; a revises link to
// an absent unit is dropped with a warning. Annotations not yet present in the
// store are ingested.
ImportResult import_nanopub(KnowledgeGraph& kg, std::string_view trig);

// ---- containers

// Relative path -> file content. "manifest.yaml" is the root manifest.
using Archive = std::map<std::string, std::string>;

// Statement members become nanopubs/*.trig; compound members become nested
// manifests when recursive, bare references otherwise.
Archive export_container(const KnowledgeGraph& kg, const Iri& gupri, bool recursive = true);
ImportResult import_container(KnowledgeGraph& kg, const Archive& archive);

// Minimal zip (deflate via zlib).
std::string write_zip(const Archive& archive);
Archive read_zip(std::string_view bytes);

// ---- raw RDF

// N-Triples or Turtle, chosen by file extension.
PartitionReport ingest_rdf(KnowledgeGraph& kg, const std::filesystem::path& path);

// Every quad of the store, sorted.
std::string export_nquads(const KnowledgeGraph& kg);

}  // namespace semunit
