#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "semunit/knowledge_graph.hpp"
#include "semunit/render.hpp"

namespace semunit {

// ---- profiling

struct NumericSummary {
    std::size_t count = 0;
    std::optional<Decimal> min;
    std::optional<Decimal> max;
    double mean = 0.0;
};

struct SlotDistribution {
    Iri unit_class;
    std::string slot;
    NumericSummary numeric;                                 // numeric literal slots
    std::vector<std::pair<Iri, std::size_t>> top_resources;  // resource slots
};

struct ProfileSummary {
    std::map<Iri, std::size_t> class_instances;  // ontology class -> distinct typed resources
    std::map<Iri, std::size_t> unit_classes;     // unit class -> registered units
    std::map<UnitKind, std::size_t> unit_kinds;
    std::vector<SlotDistribution> slots;
    // Word-cloud data: display label -> number of statement units mentioning it.
    std::vector<std::pair<std::string, std::size_t>> label_frequencies;
    std::size_t statement_units = 0;
    std::size_t data_triples = 0;
};

ProfileSummary profile(const KnowledgeGraph& kg, std::size_t top_k = 10);
nlohmann::json profile_to_json(const ProfileSummary& p);

// ---- navigation tree

struct NavNode {
    Iri item;
    std::string label;
    std::optional<Iri> via;  // linking statement unit from the parent
    bool revisit = false;    // already shown on this path; children omitted
    std::vector<std::pair<Iri, std::string>> statements;
    std::vector<NavNode> children;
};

struct NavTree {
    Iri root;
    std::string label;
    std::vector<NavNode> nodes;
};

NavTree navigation_tree(const KnowledgeGraph& kg, const Iri& root, const std::optional<std::set<Iri>>& link_filter,
                        bool include_statements);
nlohmann::json navtree_to_json(const NavTree& t);

// ---- zoom

enum class ZoomLevel { triples, statements, items, item_groups, whole_graph };

std::string_view to_string(ZoomLevel level);
ZoomLevel parse_zoom_level(std::string_view text);
// Level a unit kind sits at; questions have none (type error).
ZoomLevel level_of(UnitKind kind);

struct ZoomResult {
    ZoomLevel level;
    std::vector<Iri> units;      // empty at the triples level
    std::vector<Triple> triples;  // triples level only
};

// gupri may be a unit, the store identifier, or a plain resource (treated as
// sitting at the triples level).
ZoomResult zoom(const KnowledgeGraph& kg, const Iri& gupri, ZoomLevel target);
ZoomLevel level_of_target(const KnowledgeGraph& kg, const Iri& gupri);

// ---- facets

enum class TimeBucket { days7, days30, days365, days3650, all };
std::string_view to_string(TimeBucket b);
TimeBucket parse_time_bucket(std::string_view text);
std::optional<std::chrono::seconds> bucket_span(TimeBucket b);

struct SlotFacet {
    Iri unit_class;
    std::string slot;
    std::optional<Decimal> min;
    std::optional<Decimal> max;
    std::map<Iri, std::size_t> resource_classes;
};

struct FacetMap {
    std::map<Iri, std::size_t> unit_classes;
    std::map<StatementCategory, std::size_t> categories;
    std::map<bool, std::size_t> negated;
    std::vector<SlotFacet> slots;
    std::map<TimeBucket, std::size_t> created;  // cumulative buckets

    bool empty() const { return unit_classes.empty(); }
};

struct FacetFilter {
    enum class Kind { unit_class, category, negated, slot_range, slot_class, created_within };
    Kind kind;
    std::optional<Iri> iri;  // unit class, or class for slot_class
    std::optional<StatementCategory> category;
    bool flag = false;
    std::string slot;
    std::optional<NumericRange> range;
    TimeBucket bucket = TimeBucket::all;
};

FacetMap facet_options(const KnowledgeGraph& kg, const std::vector<Iri>& units);
std::vector<Iri> apply_facets(const KnowledgeGraph& kg, const std::vector<Iri>& units,
                              const std::vector<FacetFilter>& filters);
nlohmann::json facets_to_json(const FacetMap& f);
FacetFilter facet_filter_from_json(const nlohmann::json& j);

// ---- hotspots

// Ontology classes ranked by the number of statement units created or updated
// within the window (nullopt = all time) that mention an instance of them.
std::vector<std::pair<Iri, std::size_t>> hotspots(const KnowledgeGraph& kg, std::optional<std::chrono::seconds> window);

// ---- tables

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
};

// Statement mode (units of one statement class): subject + display slots.
// Item mode (item units): one row per statement class, one column per item.
// unit_class gives the header for empty statement-mode input.
Table tabulate(const KnowledgeGraph& kg, const std::vector<Iri>& units,
               const std::optional<Iri>& unit_class = std::nullopt);
nlohmann::json table_to_json(const Table& t);

nlohmann::json mindmap_to_json(const MindMapGraph& g);

}  // namespace semunit
