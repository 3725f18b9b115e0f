#include "semunit/validate.hpp"

#include <regex>

#include "semunit/error.hpp"
#include "semunit/registry.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

SlotExtraction extract_slots(const StatementSchema& schema, const Iri& subject,
                             std::span<const Triple> data) {
    std::map<std::pair<Iri, Iri>, std::vector<const Triple*>> out_edges;
    for (const auto& t : data) out_edges[{t.subject, t.predicate}].push_back(&t);

    SlotExtraction ex;
    for (const auto& slot : schema.slots) {
        std::set<Iri> frontier{subject};
        auto& values = ex.values[slot.name];
        auto& inter = ex.intermediates[slot.name];
        for (std::size_t step = 0; step < slot.path.size(); ++step) {
            const bool last = step + 1 == slot.path.size();
            std::set<Iri> next;
            for (const auto& node : frontier) {
                auto it = out_edges.find({node, slot.path[step]});
                if (it == out_edges.end()) continue;
                for (const Triple* t : it->second) {
                    if (last) {
                        values.push_back(t->object);
                        ex.covered.insert(*t);
                    } else if (const Iri* r = t->object.as_resource()) {
                        next.insert(*r);
                        ex.covered.insert(*t);
                    }
                }
            }
            if (!last) inter.push_back(next);
            frontier = std::move(next);
        }
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
    }
    return ex;
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::subject_kind: return "subject-kind";
        case ViolationKind::subject_class: return "subject-class";
        case ViolationKind::cardinality: return "cardinality";
        case ViolationKind::value_kind: return "value-kind";
        case ViolationKind::class_mismatch: return "class";
        case ViolationKind::datatype: return "datatype";
        case ViolationKind::range: return "range";
        case ViolationKind::pattern: return "pattern";
        case ViolationKind::stray_triple: return "stray-triple";
        case ViolationKind::negation: return "negation";
    }
    return "unknown";
}

std::vector<std::string> ValidationReport::messages() const {
    std::vector<std::string> out;
    for (const auto& v : violations) {
        std::string m(to_string(v.kind));
        if (!v.slot.empty()) m += " [" + v.slot + "]";
        out.push_back(m + ": " + v.message);
    }
    return out;
}

void ValidationReport::throw_if_invalid(const std::string& context) const {
    if (valid()) return;
    throw Error(ErrorCode::validation, context + ": " + messages().front(), messages());
}

TypeOracle store_type_oracle(const GraphStore& store, const Iri& layer_graph) {
    return [&store, layer_graph](const Iri& resource, const Iri& cls) {
        if (resource == cls) return true;
        for (const auto& q : store.match({.subject = resource, .predicate = vocab::instance_of, .object = Term(cls)}))
            if (q.graph != layer_graph) return true;
        return false;
    };
}

namespace {

std::string show(const Term& t) {
    if (const Iri* r = t.as_resource()) return "<" + r->str() + ">";
    return "\"" + t.literal().lexical() + "\"";
}

}  // namespace

ValidationReport validate_triples(const StatementSchema& schema, const Iri& subject,
                                  ResourceKind subject_kind, std::span<const Triple> data,
                                  const TypeOracle& is_instance) {
    ValidationReport report;
    auto add = [&](ViolationKind k, std::string slot, std::string msg) {
        report.violations.push_back({k, std::move(slot), std::move(msg)});
    };

    if (!schema.accepts_subject_kind(subject_kind))
        add(ViolationKind::subject_kind, "",
            "subject kind " + std::string(to_string(subject_kind)) + " not accepted by " + schema.unit_class.str());
    if (schema.subject_class && !is_instance(subject, *schema.subject_class))
        add(ViolationKind::subject_class, "",
            "subject <" + subject.str() + "> is not an instance of <" + schema.subject_class->str() + ">");

    SlotExtraction ex = extract_slots(schema, subject, data);
    for (const auto& slot : schema.slots) {
        const auto& values = ex.values[slot.name];
        if (!slot.cardinality.admits(values.size())) {
            std::string bound = std::to_string(slot.cardinality.min) + ".." +
                                (slot.cardinality.max ? std::to_string(*slot.cardinality.max) : "*");
            add(ViolationKind::cardinality, slot.name,
                "expected " + bound + " values, found " + std::to_string(values.size()));
        }
        std::optional<std::regex> re;
        if (slot.pattern) re.emplace(*slot.pattern);
        for (const auto& v : values) {
            if (slot.value_kind == ValueKind::resource) {
                const Iri* r = v.as_resource();
                if (!r) {
                    add(ViolationKind::value_kind, slot.name, "expected a resource, found literal " + show(v));
                    continue;
                }
                if (slot.class_constraint && !is_instance(*r, *slot.class_constraint))
                    add(ViolationKind::class_mismatch, slot.name,
                        show(v) + " is not an instance of <" + slot.class_constraint->str() + ">");
                continue;
            }
            const Literal* lit = v.as_literal();
            if (!lit) {
                add(ViolationKind::value_kind, slot.name, "expected a literal, found " + show(v));
                continue;
            }
            if (slot.datatype && lit->datatype() != *slot.datatype) {
                add(ViolationKind::datatype, slot.name,
                    show(v) + " has datatype <" + lit->datatype().str() + ">, expected <" + slot.datatype->str() + ">");
                continue;
            }
            if (!lit->well_formed()) {
                add(ViolationKind::datatype, slot.name, show(v) + " is not a valid lexical form");
                continue;
            }
            if (slot.numeric_range) {
                auto d = Decimal::parse(lit->lexical());
                if (!d || !slot.numeric_range->contains(*d))
                    add(ViolationKind::range, slot.name,
                        show(v) + " outside [" + slot.numeric_range->min.lexical() + ", " +
                            slot.numeric_range->max.lexical() + "]");
            }
            if (re && !std::regex_search(lit->lexical(), *re))
                add(ViolationKind::pattern, slot.name, show(v) + " does not match /" + *slot.pattern + "/");
        }
    }
    for (const auto& t : data) {
        if (ex.covered.count(t)) continue;
        add(ViolationKind::stray_triple, "", "triple not covered by any slot: " + show(Term(t.subject)) + " " +
                                                 show(Term(t.predicate)) + " " + show(t.object));
    }
    return report;
}

ValidationReport validate_instance(const UnitRegistry& registry, const StatementSchema& schema,
                                   const SemanticUnit& unit) {
    if (unit.kind != UnitKind::statement || !unit.subject || !unit.data_graph)
        throw Error(ErrorCode::type_error, "unit " + unit.gupri.str() + " is not a statement unit");
    auto data = registry.store().graph(*unit.data_graph);
    auto report = validate_triples(schema, *unit.subject, registry.kind_of(*unit.subject), data,
                                   store_type_oracle(registry.store(), registry.layer_graph()));
    if (unit.negated && !schema.negatable())
        report.violations.push_back(
            {ViolationKind::negation, "", "schema " + schema.unit_class.str() + " does not support negation"});
    return report;
}

}  // namespace semunit
