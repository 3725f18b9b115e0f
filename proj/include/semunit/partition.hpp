#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semunit/knowledge_graph.hpp"
#include "semunit/validate.hpp"

namespace semunit {

struct SlotBindings {
    Iri subject;
    std::map<std::string, std::vector<Term>> values;
};

struct MintOptions {
    bool negated = false;
    std::optional<UnitMetadata> metadata;  // defaults to KnowledgeGraph::new_metadata()
    std::optional<Iri> revises;
};

// Writes the slot-path triples into a fresh named graph and registers the
// unit. Validation runs before anything is written; a rejected mint leaves
// the store untouched.
SemanticUnit mint_statement_unit(KnowledgeGraph& kg, const StatementSchema& schema, const SlotBindings& bindings,
                                 const MintOptions& options = {});

// The triples mint_statement_unit would write; intermediate nodes come from
// mint_node.
std::vector<Triple> instantiate_schema(const StatementSchema& schema, const SlotBindings& bindings,
                                       const std::function<Iri()>& mint_node);

StatementCategory classify_statement(const UnitRegistry& registry, const SchemaRegistry& schemas,
                                     const SemanticUnit& unit);

// Statement whose subject is another unit. The schema must accept
// semantic-unit subjects.
SemanticUnit statement_about_unit(KnowledgeGraph& kg, const Iri& subject_unit, const StatementSchema& schema,
                                  SlotBindings bindings, const MintOptions& options = {});

// Successor unit carrying the same data as the original, flagged negated and
// linked to it by a revises triple.
SemanticUnit negate_statement_unit(KnowledgeGraph& kg, const Iri& gupri);

// Declares a resource kind in the layer and, when cls is given and the
// resource is not yet typed, records the typing as a generic statement unit.
void declare_resource(KnowledgeGraph& kg, const Iri& resource, ResourceKind kind, const std::optional<Iri>& cls);

// Per-predicate class for schema-less single-triple statement units.
Iri generic_unit_class(const Iri& predicate);
bool is_generic_unit_class(const Iri& unit_class);
// Inverse of generic_unit_class; nullopt for other classes.
std::optional<Iri> generic_predicate(const Iri& unit_class);

struct PartitionReport {
    std::map<Iri, std::size_t> units_created;  // per schema class
    std::size_t generic_units = 0;
    std::size_t triples_total = 0;
    std::size_t triples_claimed = 0;
    std::vector<Iri> unmatched_predicates;

    std::string to_yaml() const;
};

struct PartitionMatch {
    const StatementSchema* schema;
    Iri subject;
    std::vector<Triple> triples;
};

struct Partition {
    std::vector<PartitionMatch> matches;
    std::vector<Triple> generic;  // one unit each
    PartitionReport report;
};

// Pure: greedy matching in specificity order (slot count desc, class IRI),
// subjects in lexicographic order; leftover triples become generic units.
// kind_of resolves subject kinds; is_instance answers class constraints.
Partition partition_graph(std::span<const Triple> raw, const SchemaRegistry& schemas,
                          const std::function<ResourceKind(const Iri&)>& kind_of, const TypeOracle& is_instance);

// Partitions raw triples against kg's schemas and registers every unit.
// semunit:resourceKind triples are read as declarations; triples already
// owned by a statement unit are skipped.
PartitionReport ingest_triples(KnowledgeGraph& kg, std::vector<Triple> raw);

// What ingest_triples would register, without touching the store.
Partition preview_partition(const KnowledgeGraph& kg, std::vector<Triple> raw);

}  // namespace semunit
