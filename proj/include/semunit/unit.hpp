#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semunit/term.hpp"

namespace semunit {

enum class ResourceKind {
    named_individual, some_instance, most_instances, every_instance, ontology_class, semantic_unit, relation
};

enum class StatementCategory { lexical, assertional, contingent, prototypical, universal };

enum class UnitKind {
    statement, item, item_group, granularity_tree, granular_item_group, context,
    standard_information, logical_argument, dataset, question
};

std::string_view to_string(ResourceKind kind);
std::string_view to_string(StatementCategory category);
std::string_view to_string(UnitKind kind);
ResourceKind parse_resource_kind(std::string_view text);
StatementCategory parse_statement_category(std::string_view text);
UnitKind parse_unit_kind(std::string_view text);

// Class IRIs in the reserved vocabulary.
Iri resource_kind_class(ResourceKind kind);
Iri category_class(StatementCategory category);
Iri unit_kind_class(UnitKind kind);
std::optional<ResourceKind> resource_kind_from_class(const Iri& cls);

bool is_compound(UnitKind kind);

// Category implied by a subject's resource kind (lexical is schema-declared).
StatementCategory classify(ResourceKind subject_kind, bool lexical_schema);

using Timestamp = std::chrono::sys_seconds;

std::string format_rfc3339(Timestamp t);
// Accepts "YYYY-MM-DDTHH:MM:SSZ" (fractional seconds and offsets tolerated).
Timestamp parse_rfc3339(std::string_view text);

struct UnitMetadata {
    Iri creator;
    Timestamp created;
    std::optional<Iri> contributor;
    Timestamp last_updated;
    // Who authored the content; distinct from who created the unit.
    std::optional<Iri> author;
    Iri license;

    bool operator==(const UnitMetadata&) const = default;
};

struct SemanticUnit {
    Iri gupri;
    Iri unit_class;
    UnitKind kind;
    std::optional<Iri> data_graph;     // statement units only
    std::vector<Iri> members;          // compound units only, ordered
    std::optional<Iri> subject;        // statement and item units
    UnitMetadata metadata;
    std::optional<Iri> schema_ref;
    std::optional<std::string> logic_framework;
    std::optional<StatementCategory> category;
    bool negated = false;
    std::optional<Iri> revises;
    // Role-tagged members (logical argument premises and conclusion).
    std::vector<std::pair<std::string, Iri>> roles;
    // Serialized question (question units only).
    std::optional<std::string> question_spec;

    bool operator==(const SemanticUnit&) const = default;
};

}  // namespace semunit
