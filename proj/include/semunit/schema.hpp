#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "semunit/numeric.hpp"
#include "semunit/term.hpp"
#include "semunit/unit.hpp"

namespace semunit {

enum class ValueKind { resource, literal };

struct Cardinality {
    std::size_t min = 1;
    std::optional<std::size_t> max = 1;  // nullopt = unbounded

    bool admits(std::size_t n) const { return n >= min && (!max || n <= *max); }
};

// One object position of a statement shape. A path longer than one predicate
// walks through intermediate nodes; slots sharing a path prefix share those
// nodes.
struct Slot {
    std::string name;
    std::vector<Iri> path;
    ValueKind value_kind = ValueKind::resource;
    std::optional<Iri> class_constraint;
    std::optional<Iri> datatype;
    std::optional<NumericRange> numeric_range;
    std::optional<std::string> pattern;
    Cardinality cardinality;
    bool display = true;
};

// "subject" or a slot name.
struct DisplayEdge {
    std::string from;
    std::string label;
    std::string to;
};

struct StatementSchema {
    Iri gupri;
    Iri unit_class;
    std::string description;
    std::set<ResourceKind> subject_kinds;  // empty = any
    std::optional<Iri> subject_class;
    std::vector<Slot> slots;
    std::string label_template;
    std::optional<std::string> negated_label_template;
    std::vector<DisplayEdge> mindmap_template;
    bool lexical = false;
    std::optional<std::string> logic_framework;

    const Slot* slot(std::string_view name) const;
    bool negatable() const { return negated_label_template.has_value(); }
    bool accepts_subject_kind(ResourceKind kind) const {
        return subject_kinds.empty() || subject_kinds.count(kind) > 0;
    }
};

// Placeholder names used in a template ("${name}").
std::vector<std::string> template_placeholders(std::string_view text);

// Throws Error(validation) listing every structural problem.
void check_schema(const StatementSchema& schema);

// Immutable after registration; lookups by class IRI or schema GUPRI.
class SchemaRegistry {
public:
    void add(StatementSchema schema);  // conflict on duplicate class or gupri
    const StatementSchema* by_class(const Iri& unit_class) const;
    const StatementSchema* by_gupri(const Iri& gupri) const;
    const StatementSchema& get_by_class(const Iri& unit_class) const;  // not_found
    std::vector<const StatementSchema*> all() const;
    std::size_t size() const noexcept { return schemas_.size(); }

    // Specificity order used by the partitioner: slot count desc, then class.
    std::vector<const StatementSchema*> by_specificity() const;

private:
    std::map<Iri, StatementSchema> schemas_;  // keyed by class
    std::map<Iri, Iri> gupri_to_class_;
};

// Schema definition files: one YAML document per schema. source names the
// file in diagnostics ("file:line: field: message").
std::vector<StatementSchema> parse_schema_text(std::string_view text, const std::string& source);
std::vector<StatementSchema> load_schema_file(const std::filesystem::path& path);
// All *.yaml files of a directory, in file-name order.
std::vector<StatementSchema> load_schema_dir(const std::filesystem::path& dir);

}  // namespace semunit
