#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semunit/graph_store.hpp"
#include "semunit/schema.hpp"

namespace semunit {

class UnitRegistry;

// rdfs:label, then skos:prefLabel, then the IRI's local name. Layer-graph
// triples are ignored. Literals render as their lexical form.
std::string display_label(const GraphStore& store, const Iri& layer_graph, const Iri& resource);
std::string display_label(const GraphStore& store, const Iri& layer_graph, const Term& term);

// Fills ${subject} and ${slot} placeholders. Multiple values join with ", ".
// Throws Error(validation) naming the slot when a placeholder has no value.
std::string render_label(const UnitRegistry& registry, const StatementSchema& schema, const SemanticUnit& unit);

struct MindMapNode {
    std::string id;  // "subject", "<slot>" or "<slot>[i]" for multi-valued slots
    std::string label;
    std::optional<Term> term;
};

struct MindMapEdge {
    std::string from;
    std::string to;
    std::string label;
};

struct MindMapGraph {
    std::vector<MindMapNode> nodes;
    std::vector<MindMapEdge> edges;
    bool negated = false;
};

MindMapGraph render_mindmap(const UnitRegistry& registry, const StatementSchema& schema, const SemanticUnit& unit);

// Statement units without a usable schema: one clause per data triple.
std::string render_generic_label(const UnitRegistry& registry, const SemanticUnit& unit);
MindMapGraph render_generic_mindmap(const UnitRegistry& registry, const SemanticUnit& unit);

// Label for any unit: schema template for statements when available, generic
// fallback otherwise, and a summary for compound units.
std::string render_unit_label(const UnitRegistry& registry, const SchemaRegistry& schemas, const Iri& gupri);

}  // namespace semunit
