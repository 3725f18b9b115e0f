#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "semunit/graph_store.hpp"
#include "semunit/unit.hpp"

namespace semunit {

// Inverse of UnitRegistry::layer_triples: rebuilds a unit from the triples
// describing it. Throws Error(format) when the description is incomplete.
SemanticUnit unit_from_description(const Iri& gupri, std::span<const Triple> triples);

// GUPRI -> unit map plus reverse indexes. Every registered unit is mirrored
// into the semantic-units layer graph of the bound store; the registry can be
// rebuilt from that graph alone.
class UnitRegistry {
public:
    UnitRegistry(GraphStore& store, Iri layer_graph);

    UnitRegistry(const UnitRegistry&) = delete;
    UnitRegistry& operator=(const UnitRegistry&) = delete;

    // Statement units: data-graph triples must already be in the store.
    // Throws conflict (duplicate gupri / owned graph) or integrity (dangling
    // member, shape invariant broken).
    void register_unit(SemanticUnit unit);

    // Integrity error while another unit still contains it. The owned data
    // graph is erased too when erase_data_graph is set.
    void remove_unit(const Iri& gupri, bool erase_data_graph = false);

    // Rewrites membership; rejects cycles.
    void replace_members(const Iri& gupri, std::vector<Iri> members, Timestamp updated);

    const SemanticUnit* find(const Iri& gupri) const;
    const SemanticUnit& get(const Iri& gupri) const;  // not_found
    bool contains(const Iri& gupri) const { return units_.count(gupri) > 0; }
    std::size_t size() const noexcept { return units_.size(); }

    // All units ordered by gupri.
    std::vector<const SemanticUnit*> all() const;
    std::vector<Iri> of_class(const Iri& unit_class) const;
    std::vector<Iri> of_kind(UnitKind kind) const;
    std::vector<Iri> with_subject(const Iri& subject) const;
    std::vector<Iri> containers_of(const Iri& member) const;
    std::vector<Iri> statements_mentioning(const Iri& resource) const;
    std::vector<Iri> unit_classes() const;

    // A unit is superseded once another unit revises it.
    bool superseded(const Iri& gupri) const;

    std::set<Triple> merged_data_graph(const Iri& gupri) const;
    // Transitive members (not including gupri itself).
    std::set<Iri> member_closure(const Iri& gupri) const;
    // Statement units reachable through membership (gupri itself if a statement).
    std::set<Iri> statement_closure(const Iri& gupri) const;
    // For each unit kind, units whose merged data graph mentions the resource.
    std::map<UnitKind, std::vector<Iri>> units_containing(const Iri& resource) const;

    void declare_kind(const Iri& resource, ResourceKind kind);
    // Declared kind; registered units are semantic-unit; default named-individual.
    ResourceKind kind_of(const Iri& resource) const;
    const std::map<Iri, ResourceKind>& declared_kinds() const noexcept { return kinds_; }

    // Discards in-memory state and reloads every unit from the layer graph.
    void rebuild_from_layer();

    std::vector<Triple> layer_triples(const SemanticUnit& unit) const;

    const Iri& layer_graph() const noexcept { return layer_graph_; }
    GraphStore& store() noexcept { return store_; }
    const GraphStore& store() const noexcept { return store_; }

private:
    void index_unit(const SemanticUnit& unit);
    void unindex_unit(const SemanticUnit& unit);
    void write_layer(const SemanticUnit& unit);
    void erase_layer(const SemanticUnit& unit);
    void check_shape(const SemanticUnit& unit) const;

    GraphStore& store_;
    Iri layer_graph_;
    std::map<Iri, SemanticUnit> units_;
    std::map<Iri, std::set<Iri>> by_class_;
    std::map<UnitKind, std::set<Iri>> by_kind_;
    std::map<Iri, std::set<Iri>> by_subject_;
    std::map<Iri, std::set<Iri>> containers_;
    std::map<Iri, std::set<Iri>> mentions_;
    std::map<Iri, std::set<Iri>> revised_by_;
    std::map<Iri, Iri> graph_owner_;
    std::map<Iri, ResourceKind> kinds_;
};

}  // namespace semunit
