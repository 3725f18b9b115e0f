#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "semunit/knowledge_graph.hpp"

namespace semunit {

enum class Quantifier { some, every, most };

struct Unbound {
    bool operator==(const Unbound&) const = default;
};
struct FixedValue {
    Term value;
    bool operator==(const FixedValue&) const = default;
};
// some: existential over instances; every: enumerates every-instance and
// ontology-class resources; most: rejected by the compiler.
struct ResourceVariable {
    std::string name;
    std::optional<Iri> class_constraint;
    Quantifier quantifier = Quantifier::some;
    bool operator==(const ResourceVariable&) const = default;
};
struct LiteralVariable {
    std::string name;
    std::optional<Iri> datatype;
    std::optional<NumericRange> range;
    std::optional<std::string> pattern;
    bool operator==(const LiteralVariable& o) const {
        auto range_eq = range.has_value() == o.range.has_value() &&
                        (!range || (range->min == o.range->min && range->max == o.range->max));
        return name == o.name && datatype == o.datatype && range_eq && pattern == o.pattern;
    }
};

using Binding = std::variant<Unbound, FixedValue, ResourceVariable, LiteralVariable>;

// One statement schema instantiated with variables.
struct QuestionPart {
    Iri schema_class;
    Binding subject = Unbound{};
    std::map<std::string, Binding> slots;
    bool negated = false;  // target the negation-unit class
    bool operator==(const QuestionPart&) const = default;
};

struct Question {
    std::string label;
    std::vector<QuestionPart> parts;
    bool operator==(const Question&) const = default;
};

nlohmann::json question_to_json(const Question& q);
Question question_from_json(const nlohmann::json& j);  // Error(format) on malformed input

// ---------------------------------------------------------------------------

struct PlanTerm {
    std::optional<Term> constant;
    std::string var;  // set when not constant

    static PlanTerm of(Term t) { return {std::move(t), {}}; }
    static PlanTerm variable(std::string name) { return {std::nullopt, std::move(name)}; }
    bool is_var() const { return !constant.has_value(); }
    bool operator==(const PlanTerm&) const = default;
};

struct TriplePattern {
    PlanTerm subject;
    Iri predicate;
    PlanTerm object;
    bool operator==(const TriplePattern&) const = default;
};

// Statement unit of a schema class whose layer entry binds the unit and
// subject variables, plus the path patterns inside its data graph.
struct PartPlan {
    Iri unit_class;
    bool negated = false;
    std::string unit_var;   // "_u0"
    std::string graph_var;  // "_g0"
    PlanTerm subject;
    std::vector<TriplePattern> patterns;
    bool operator==(const PartPlan&) const = default;
};

struct Filter {
    enum class Kind { is_resource, is_literal, datatype, numeric_range, regex, instance_of, every_kind, some_kind };
    Kind kind;
    std::string var;
    std::optional<Iri> iri;  // datatype or class
    std::optional<NumericRange> range;
    std::string pattern;
    bool operator==(const Filter& o) const {
        return kind == o.kind && var == o.var && iri == o.iri && pattern == o.pattern &&
               range.has_value() == o.range.has_value() &&
               (!range || (range->min == o.range->min && range->max == o.range->max));
    }
};

struct QueryPlan {
    std::vector<PartPlan> parts;
    std::vector<Filter> filters;
    std::vector<std::string> projection;  // user variables, first-appearance order
    std::vector<std::string> join_vars;   // variables shared by two or more parts
    bool boolean = false;
    Iri layer_graph = vocab::default_layer_graph;
    bool operator==(const QueryPlan&) const = default;
};

// Throws Error(validation) for compile errors (unknown schema or slot,
// range on a resource slot, most-instances variable, conflicting variable
// kinds, bad variable name).
QueryPlan compile(const Question& q, const SchemaRegistry& schemas, const Iri& layer_graph);

struct ResultRow {
    std::map<std::string, Term> bindings;
    std::set<Iri> units;  // statement units that supplied the match
    bool operator==(const ResultRow&) const = default;
};

struct ResultSet {
    bool boolean_mode = false;
    bool answer = false;
    std::vector<std::string> variables;
    std::vector<ResultRow> rows;  // sorted by bindings in projection order
};

ResultSet execute(const QueryPlan& plan, const KnowledgeGraph& kg);

// SPARQL 1.1 SELECT DISTINCT / ASK text.
std::string emit_sparql(const QueryPlan& plan);

nlohmann::json result_to_json(const ResultSet& r);

// Persists the question as a question unit (kind question).
SemanticUnit register_question(KnowledgeGraph& kg, const Question& q);
Question question_of_unit(const SemanticUnit& unit);

}  // namespace semunit
