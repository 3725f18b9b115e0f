#pragma once

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "semunit/graph_store.hpp"
#include "semunit/schema.hpp"

namespace semunit {

class UnitRegistry;

// Values reached by walking every slot path from the subject. covered holds
// every triple traversed on the way (intermediate hops included).
struct SlotExtraction {
    std::map<std::string, std::vector<Term>> values;
    std::set<Triple> covered;
    // Intermediate nodes per path prefix length, keyed by slot name.
    std::map<std::string, std::vector<std::set<Iri>>> intermediates;
};

SlotExtraction extract_slots(const StatementSchema& schema, const Iri& subject,
                             std::span<const Triple> data);

enum class ViolationKind {
    subject_kind, subject_class, cardinality, value_kind, class_mismatch, datatype, range, pattern,
    stray_triple, negation
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::string slot;  // empty for subject- and graph-level violations
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool valid() const noexcept { return violations.empty(); }
    std::vector<std::string> messages() const;
    // Throws Error(validation) carrying every message when invalid.
    void throw_if_invalid(const std::string& context) const;
};

// Answers "is resource an instance of cls". Equality counts, so a class-level
// value (every-instance / ontology-class subjects) satisfies its own class.
using TypeOracle = std::function<bool(const Iri& resource, const Iri& cls)>;

// Looks up rdf:type triples in every graph except the layer graph.
TypeOracle store_type_oracle(const GraphStore& store, const Iri& layer_graph);

ValidationReport validate_triples(const StatementSchema& schema, const Iri& subject,
                                  ResourceKind subject_kind, std::span<const Triple> data,
                                  const TypeOracle& is_instance);

// Validates a registered statement unit against its schema.
ValidationReport validate_instance(const UnitRegistry& registry, const StatementSchema& schema,
                                   const SemanticUnit& unit);

}  // namespace semunit
