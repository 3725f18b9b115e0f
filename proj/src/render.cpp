#include "semunit/render.hpp"

#include "semunit/error.hpp"
#include "semunit/registry.hpp"
#include "semunit/validate.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

namespace {

std::optional<std::string> first_literal(const GraphStore& store, const Iri& layer, const Iri& r, const Iri& p) {
    std::optional<std::string> best;
    for (const auto& q : store.match({.subject = r, .predicate = p})) {
        if (q.graph == layer) continue;
        const Literal* lit = q.triple.object.as_literal();
        if (!lit) continue;
        // Prefer untagged and English labels over other languages.
        bool preferred = !lit->language() || *lit->language() == "en";
        if (preferred && (!best || lit->lexical() < *best)) best = lit->lexical();
    }
    if (best) return best;
    for (const auto& q : store.match({.subject = r, .predicate = p}))
        if (q.graph != layer && q.triple.object.is_literal()) return q.triple.object.literal().lexical();
    return std::nullopt;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

const Iri& statement_subject(const SemanticUnit& unit) {
    if (!unit.subject) throw Error(ErrorCode::type_error, "unit " + unit.gupri.str() + " has no subject");
    return *unit.subject;
}

std::map<std::string, std::vector<Term>> slot_values(const UnitRegistry& registry, const StatementSchema& schema,
                                                     const SemanticUnit& unit) {
    if (!unit.data_graph) throw Error(ErrorCode::type_error, "unit " + unit.gupri.str() + " is not a statement unit");
    auto data = registry.store().graph(*unit.data_graph);
    return extract_slots(schema, statement_subject(unit), data).values;
}

}  // namespace

std::string display_label(const GraphStore& store, const Iri& layer_graph, const Iri& resource) {
    if (auto l = first_literal(store, layer_graph, resource, vocab::rdfs_label)) return *l;
    if (auto l = first_literal(store, layer_graph, resource, vocab::skos_pref_label)) return *l;
    return std::string(resource.local_name());
}

std::string display_label(const GraphStore& store, const Iri& layer_graph, const Term& term) {
    if (const Iri* r = term.as_resource()) return display_label(store, layer_graph, *r);
    return term.literal().lexical();
}

std::string render_label(const UnitRegistry& registry, const StatementSchema& schema, const SemanticUnit& unit) {
    const std::string& tmpl =
        unit.negated && schema.negated_label_template ? *schema.negated_label_template : schema.label_template;
    if (unit.negated && !schema.negated_label_template)
        throw Error(ErrorCode::validation, "schema " + schema.unit_class.str() + " has no negated label");
    auto values = slot_values(registry, schema, unit);
    const auto& store = registry.store();
    const auto& layer = registry.layer_graph();

    std::string out;
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        auto open = tmpl.find("${", pos);
        if (open == std::string::npos) {
            out += tmpl.substr(pos);
            break;
        }
        out += tmpl.substr(pos, open - pos);
        auto close = tmpl.find('}', open);
        std::string name = tmpl.substr(open + 2, close - open - 2);
        if (name == "subject") {
            out += display_label(store, layer, statement_subject(unit));
        } else {
            auto it = values.find(name);
            if (it == values.end() || it->second.empty())
                throw Error(ErrorCode::validation, "unresolved placeholder ${" + name + "} in " + unit.gupri.str());
            std::vector<std::string> labels;
            for (const auto& v : it->second) labels.push_back(display_label(store, layer, v));
            out += join(labels, ", ");
        }
        pos = close + 1;
    }
    return out;
}

MindMapGraph render_mindmap(const UnitRegistry& registry, const StatementSchema& schema, const SemanticUnit& unit) {
    auto values = slot_values(registry, schema, unit);
    const auto& store = registry.store();
    const auto& layer = registry.layer_graph();

    MindMapGraph g;
    g.negated = unit.negated;
    g.nodes.push_back({"subject", display_label(store, layer, statement_subject(unit)), Term(*unit.subject)});
    std::map<std::string, std::vector<std::string>> ids;
    ids["subject"] = {"subject"};
    for (const auto& slot : schema.slots) {
        if (!slot.display) continue;
        const auto& vs = values[slot.name];
        for (std::size_t i = 0; i < vs.size(); ++i) {
            std::string id = vs.size() == 1 ? slot.name : slot.name + "[" + std::to_string(i) + "]";
            g.nodes.push_back({id, display_label(store, layer, vs[i]), vs[i]});
            ids[slot.name].push_back(id);
        }
    }
    for (const auto& e : schema.mindmap_template) {
        for (const auto* end : {&e.from, &e.to})
            if (ids[*end].empty())
                throw Error(ErrorCode::validation, "unresolved mind-map slot '" + *end + "' in " + unit.gupri.str());
        for (const auto& from : ids[e.from])
            for (const auto& to : ids[e.to]) g.edges.push_back({from, to, e.label});
    }
    return g;
}

std::string render_generic_label(const UnitRegistry& registry, const SemanticUnit& unit) {
    if (!unit.data_graph) throw Error(ErrorCode::type_error, "unit " + unit.gupri.str() + " is not a statement unit");
    const auto& store = registry.store();
    const auto& layer = registry.layer_graph();
    std::vector<std::string> clauses;
    for (const auto& t : store.graph(*unit.data_graph))
        clauses.push_back(display_label(store, layer, t.subject) + " " + display_label(store, layer, t.predicate) +
                          " " + display_label(store, layer, t.object));
    std::string out = join(clauses, "; ");
    return unit.negated ? "not: " + out : out;
}

MindMapGraph render_generic_mindmap(const UnitRegistry& registry, const SemanticUnit& unit) {
    if (!unit.data_graph) throw Error(ErrorCode::type_error, "unit " + unit.gupri.str() + " is not a statement unit");
    const auto& store = registry.store();
    const auto& layer = registry.layer_graph();
    MindMapGraph g;
    g.negated = unit.negated;
    std::map<Term, std::string> ids;
    auto node = [&](const Term& t) {
        auto [it, fresh] = ids.emplace(t, "n" + std::to_string(ids.size()));
        if (fresh) g.nodes.push_back({it->second, display_label(store, layer, t), t});
        return it->second;
    };
    if (unit.subject) node(Term(*unit.subject));
    for (const auto& t : store.graph(*unit.data_graph)) {
        auto from = node(Term(t.subject));
        auto to = node(t.object);
        g.edges.push_back({from, to, display_label(store, layer, t.predicate)});
    }
    return g;
}

std::string render_unit_label(const UnitRegistry& registry, const SchemaRegistry& schemas, const Iri& gupri) {
    const SemanticUnit& unit = registry.get(gupri);
    const auto& store = registry.store();
    const auto& layer = registry.layer_graph();
    switch (unit.kind) {
        case UnitKind::statement: {
            const StatementSchema* schema = schemas.by_class(unit.unit_class);
            if (schema && (!unit.negated || schema->negatable())) {
                try {
                    return render_label(registry, *schema, unit);
                } catch (const Error&) {
                    // incomplete instance; fall through to the generic form
                }
            }
            return render_generic_label(registry, unit);
        }
        case UnitKind::item:
            return display_label(store, layer, statement_subject(unit));
        case UnitKind::question:
            return "question " + std::string(unit.gupri.local_name());
        default:
            break;
    }
    std::string kind(to_string(unit.kind));
    std::replace(kind.begin(), kind.end(), '-', ' ');
    if (unit.subject) return display_label(store, layer, *unit.subject) + " " + kind;
    std::vector<std::string> names;
    for (const auto& m : unit.members) {
        if (names.size() == 3) {
            names.push_back("+" + std::to_string(unit.members.size() - 3) + " more");
            break;
        }
        names.push_back(render_unit_label(registry, schemas, m));
    }
    return kind + ": " + join(names, ", ");
}

}  // namespace semunit
