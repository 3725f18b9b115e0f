#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "semunit/knowledge_graph.hpp"

namespace semunit {

struct GranularityPerspective {
    Iri relation_class;  // statement class whose relation is a partial order
    std::string label;
};

struct StandardInformationDefinition {
    Iri gupri;  // used as unit class of conforming units
    std::map<Iri, std::size_t> required;  // statement class -> min count
    std::string label;
};

struct BuildConfig {
    std::set<Iri> is_about_classes;  // generic IAO:0000136 units always count
    std::vector<GranularityPerspective> perspectives;
    std::vector<StandardInformationDefinition> standard_information;
};

BuildConfig parse_build_config(std::string_view text, const std::string& source);
BuildConfig load_build_config(const std::filesystem::path& path);

struct BuildResult {
    std::vector<Iri> units;  // current derived units of the kind, in build order
    std::size_t created = 0;
    std::size_t updated = 0;
    std::size_t retired = 0;
    std::vector<std::string> diagnostics;
};

// Builders register derived units under content-keyed GUPRIs; re-running on
// unchanged input changes nothing. Derived units whose defining set vanished
// are retired together with derived containers that depended on them.
BuildResult build_item_units(KnowledgeGraph& kg);
BuildResult build_item_group_units(KnowledgeGraph& kg);
BuildResult build_granularity_tree_units(KnowledgeGraph& kg, const GranularityPerspective& perspective);
BuildResult build_context_units(KnowledgeGraph& kg, const BuildConfig& config);
// Creates (or refreshes) the granular item group of one granularity tree.
SemanticUnit build_granular_item_group(KnowledgeGraph& kg, const Iri& tree_unit,
                                       std::vector<std::string>* diagnostics = nullptr);

// Items, item groups, trees per perspective, granular item groups, contexts.
std::map<UnitKind, BuildResult> build_all(KnowledgeGraph& kg, const BuildConfig& config);

// Statement units eligible for derivation: not superseded.
std::vector<Iri> active_statement_units(const UnitRegistry& registry);

bool is_about_unit(const SemanticUnit& unit, const BuildConfig& config);

// Resource-to-resource edges a relation statement contributes (subject to
// each resource value).
std::vector<std::pair<Iri, Iri>> relation_edges(const KnowledgeGraph& kg, const SemanticUnit& unit);

// Throws Error(validation) listing unmet requirements.
SemanticUnit make_standard_information_unit(KnowledgeGraph& kg, const StandardInformationDefinition& def,
                                            std::vector<Iri> members);

enum class InferenceKind { deduction, induction, abduction };
std::string_view to_string(InferenceKind kind);
InferenceKind parse_inference_kind(std::string_view text);

// members: premise, premise, conclusion.
SemanticUnit make_logical_argument_unit(KnowledgeGraph& kg, const std::vector<Iri>& members, InferenceKind kind);

SemanticUnit make_dataset_unit(KnowledgeGraph& kg, std::vector<Iri> ordered_members);

}  // namespace semunit
