#include "semunit/question.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

#include "semunit/error.hpp"
#include "semunit/json_io.hpp"
#include "semunit/rdf_io.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

using nlohmann::json;

namespace {

std::string_view quantifier_name(Quantifier q) {
    switch (q) {
        case Quantifier::some: return "some";
        case Quantifier::every: return "every";
        case Quantifier::most: return "most";
    }
    return "some";
}

Quantifier parse_quantifier(const std::string& s) {
    if (s == "some") return Quantifier::some;
    if (s == "every") return Quantifier::every;
    if (s == "most") return Quantifier::most;
    throw Error(ErrorCode::format, "unknown quantifier '" + s + "'");
}

Decimal decimal_from_json(const json& j) {
    std::string text = j.is_string() ? j.get<std::string>() : j.dump();
    auto d = Decimal::parse(text);
    if (!d) throw Error(ErrorCode::format, "range bound '" + text + "' is not a number");
    return *d;
}

json binding_to_json(const Binding& b) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Unbound>) {
                return json{{"unbound", true}};
            } else if constexpr (std::is_same_v<T, FixedValue>) {
                return json{{"value", term_to_json(v.value)}};
            } else if constexpr (std::is_same_v<T, ResourceVariable>) {
                json j{{"var", v.name}, {"kind", "resource"}, {"quantifier", quantifier_name(v.quantifier)}};
                if (v.class_constraint) j["class"] = v.class_constraint->str();
                return j;
            } else {
                json j{{"var", v.name}, {"kind", "literal"}};
                if (v.datatype) j["datatype"] = v.datatype->str();
                if (v.range) j["range"] = {v.range->min.lexical(), v.range->max.lexical()};
                if (v.pattern) j["pattern"] = *v.pattern;
                return j;
            }
        },
        b);
}

Binding binding_from_json(const json& j) {
    if (j.is_null() || (j.is_object() && j.value("unbound", false))) return Unbound{};
    if (!j.is_object()) return FixedValue{term_from_json(j)};
    if (j.contains("value")) return FixedValue{term_from_json(j.at("value"))};
    if (j.contains("iri") || j.contains("literal")) return FixedValue{term_from_json(j)};
    if (!j.contains("var")) throw Error(ErrorCode::format, "binding needs 'value' or 'var': " + j.dump());
    std::string name = j.at("var").get<std::string>();
    std::string kind;
    if (j.contains("kind")) kind = j.at("kind").get<std::string>();
    else kind = (j.contains("datatype") || j.contains("range") || j.contains("pattern")) ? "literal" : "resource";
    if (kind == "resource") {
        ResourceVariable v{name};
        if (j.contains("class")) v.class_constraint = vocab::expand(j.at("class").get<std::string>());
        if (j.contains("quantifier")) v.quantifier = parse_quantifier(j.at("quantifier").get<std::string>());
        return v;
    }
    if (kind != "literal") throw Error(ErrorCode::format, "unknown variable kind '" + kind + "'");
    LiteralVariable v{name};
    if (j.contains("datatype")) v.datatype = vocab::expand(j.at("datatype").get<std::string>());
    if (j.contains("range")) {
        const json& r = j.at("range");
        if (!r.is_array() || r.size() != 2) throw Error(ErrorCode::format, "range must be [min, max]");
        v.range = NumericRange{decimal_from_json(r[0]), decimal_from_json(r[1])};
    }
    if (j.contains("pattern")) v.pattern = j.at("pattern").get<std::string>();
    return v;
}

bool valid_var_name(const std::string& name) {
    static const std::regex re("[A-Za-z][A-Za-z0-9_]*");
    return std::regex_match(name, re);
}

struct VarInfo {
    bool literal = false;
    std::optional<Quantifier> quantifier;
    std::set<std::size_t> parts;
};

class Compiler {
public:
    Compiler(const SchemaRegistry& schemas, const Iri& layer) : schemas_(schemas) { plan_.layer_graph = layer; }

    QueryPlan run(const Question& q) {
        if (q.parts.empty()) throw Error(ErrorCode::validation, "question has no parts");
        for (std::size_t i = 0; i < q.parts.size(); ++i) compile_part(i, q.parts[i]);
        for (const auto& name : order_)
            if (vars_.at(name).parts.size() > 1) plan_.join_vars.push_back(name);
        plan_.projection = order_;
        plan_.boolean = order_.empty();
        return std::move(plan_);
    }

private:
    [[noreturn]] void fail(const std::string& where, const std::string& msg) {
        throw Error(ErrorCode::validation, "compile error at " + where + ": " + msg);
    }

    void add_filter(Filter f) {
        if (std::find(plan_.filters.begin(), plan_.filters.end(), f) == plan_.filters.end())
            plan_.filters.push_back(std::move(f));
    }

    void declare(const std::string& where, const std::string& name, bool literal,
                 std::optional<Quantifier> quantifier, std::size_t part) {
        if (!valid_var_name(name)) fail(where, "invalid variable name '" + name + "'");
        auto [it, fresh] = vars_.emplace(name, VarInfo{literal, quantifier, {}});
        if (fresh) order_.push_back(name);
        VarInfo& v = it->second;
        if (v.literal != literal)
            fail(where, "variable ?" + name + " is used both as a resource and as a literal");
        if (!literal && v.quantifier != quantifier)
            fail(where, "variable ?" + name + " is used with different quantifiers");
        v.parts.insert(part);
    }

    PlanTerm resource_term(const std::string& where, const Binding& b, const std::optional<Iri>& slot_class,
                           std::size_t part, const std::string& fallback_var) {
        if (std::holds_alternative<Unbound>(b)) return PlanTerm::variable(fallback_var);
        if (const auto* f = std::get_if<FixedValue>(&b)) {
            if (!f->value.is_resource()) fail(where, "expected a resource value");
            return PlanTerm::of(f->value);
        }
        if (std::holds_alternative<LiteralVariable>(b))
            fail(where, "literal constraints (datatype, range, pattern) on a resource position");
        const auto& v = std::get<ResourceVariable>(b);
        if (v.quantifier == Quantifier::most)
            fail(where, "most-instances variables have no query semantics and cannot be used");
        declare(where, v.name, false, v.quantifier, part);
        add_filter({Filter::Kind::is_resource, v.name});
        add_filter({v.quantifier == Quantifier::every ? Filter::Kind::every_kind : Filter::Kind::some_kind, v.name});
        for (const auto* cls : {&v.class_constraint, &slot_class}) {
            if (!*cls) continue;
            Filter f{Filter::Kind::instance_of, v.name, **cls};
            if (v.quantifier == Quantifier::every) f.pattern = "or-self";
            add_filter(std::move(f));
        }
        return PlanTerm::variable(v.name);
    }

    PlanTerm literal_term(const std::string& where, const Binding& b, const Slot& slot, std::size_t part) {
        if (const auto* f = std::get_if<FixedValue>(&b)) {
            if (!f->value.is_literal()) fail(where, "expected a literal value");
            return PlanTerm::of(f->value);
        }
        if (std::holds_alternative<ResourceVariable>(b)) fail(where, "resource variable on a literal slot");
        const auto& v = std::get<LiteralVariable>(b);
        declare(where, v.name, true, std::nullopt, part);
        std::optional<Iri> datatype = v.datatype ? v.datatype : slot.datatype;
        add_filter({Filter::Kind::is_literal, v.name});
        if (datatype) add_filter({Filter::Kind::datatype, v.name, *datatype});
        if (v.range) {
            if (!datatype || !is_numeric_datatype(*datatype)) fail(where, "range requires a numeric datatype");
            if (v.range->max < v.range->min) fail(where, "range minimum exceeds maximum");
            add_filter({Filter::Kind::numeric_range, v.name, std::nullopt, v.range});
        }
        if (v.pattern) {
            try {
                std::regex re(*v.pattern);
            } catch (const std::regex_error&) {
                fail(where, "invalid pattern");
            }
            add_filter({Filter::Kind::regex, v.name, std::nullopt, std::nullopt, *v.pattern});
        }
        return PlanTerm::variable(v.name);
    }

    void compile_part(std::size_t i, const QuestionPart& part) {
        const std::string idx = std::to_string(i);
        const StatementSchema* schema = schemas_.by_class(part.schema_class);
        if (!schema) fail("part " + idx, "unknown statement class " + part.schema_class.str());
        if (part.negated && !schema->negatable())
            fail("part " + idx, "schema " + schema->unit_class.str() + " has no negation form");
        PartPlan pp{schema->unit_class, part.negated, "_u" + idx, "_g" + idx, PlanTerm::variable("_s" + idx), {}};
        pp.subject = resource_term("part " + idx + " subject", part.subject, schema->subject_class, i, "_s" + idx);

        for (const auto& [name, _] : part.slots)
            if (!schema->slot(name)) fail("part " + idx, "unknown slot '" + name + "'");

        std::map<std::vector<Iri>, std::string> nodes;
        for (const auto& slot : schema->slots) {
            auto it = part.slots.find(slot.name);
            if (it == part.slots.end() || std::holds_alternative<Unbound>(it->second)) continue;
            const std::string where = "part " + idx + " slot '" + slot.name + "'";
            PlanTerm object = slot.value_kind == ValueKind::resource
                                  ? resource_term(where, it->second, slot.class_constraint, i, "")
                                  : literal_term(where, it->second, slot, i);
            PlanTerm at = pp.subject;
            std::vector<Iri> prefix;
            for (std::size_t k = 0; k + 1 < slot.path.size(); ++k) {
                prefix.push_back(slot.path[k]);
                auto node = nodes.find(prefix);
                if (node == nodes.end()) {
                    node = nodes.emplace(prefix, "_n" + idx + "_" + std::to_string(nodes.size())).first;
                    pp.patterns.push_back({at, slot.path[k], PlanTerm::variable(node->second)});
                }
                at = PlanTerm::variable(node->second);
            }
            pp.patterns.push_back({at, slot.path.back(), object});
        }
        plan_.parts.push_back(std::move(pp));
    }

    const SchemaRegistry& schemas_;
    QueryPlan plan_;
    std::map<std::string, VarInfo> vars_;
    std::vector<std::string> order_;
};

// ---------------------------------------------------------------------------
// Execution

bool kind_in(const std::map<Iri, ResourceKind>& declared, const Iri& r, std::initializer_list<ResourceKind> kinds) {
    auto it = declared.find(r);
    return it != declared.end() && std::find(kinds.begin(), kinds.end(), it->second) != kinds.end();
}

class Executor {
public:
    Executor(const QueryPlan& plan, const KnowledgeGraph& kg) : plan_(plan), kg_(kg), reg_(kg.registry()) {
        for (const auto& f : plan.filters) {
            if (f.kind == Filter::Kind::regex) regexes_.emplace(f.pattern, std::regex(f.pattern));
        }
    }

    ResultSet run() {
        solve(0);
        ResultSet rs;
        rs.boolean_mode = plan_.boolean;
        rs.variables = plan_.projection;
        rs.answer = !solutions_.empty();
        for (auto& [key, units] : solutions_) {
            ResultRow row;
            for (std::size_t i = 0; i < key.size(); ++i) row.bindings.emplace(plan_.projection[i], key[i]);
            row.units = units;
            rs.rows.push_back(std::move(row));
        }
        if (rs.boolean_mode) rs.rows.clear();
        return rs;
    }

private:
    bool filter_ok(const Filter& f, const Term& v) const {
        const Iri& layer = plan_.layer_graph;
        switch (f.kind) {
            case Filter::Kind::is_resource: return v.is_resource();
            case Filter::Kind::is_literal: return v.is_literal();
            case Filter::Kind::datatype:
                return v.is_literal() && !v.literal().language() && v.literal().datatype() == *f.iri;
            case Filter::Kind::numeric_range: {
                if (!v.is_literal() || !v.literal().is_numeric()) return false;
                auto d = Decimal::parse(v.literal().lexical());
                return d && f.range->contains(*d);
            }
            case Filter::Kind::regex:
                return v.is_literal() && std::regex_search(v.literal().lexical(), regexes_.at(f.pattern));
            case Filter::Kind::instance_of: {
                if (!v.is_resource()) return false;
                if (f.pattern == "or-self" && v.resource() == *f.iri) return true;
                for (const auto& q : kg_.store().match(
                         {.subject = v.resource(), .predicate = vocab::instance_of, .object = Term(*f.iri)}))
                    if (q.graph != layer) return true;
                return false;
            }
            case Filter::Kind::every_kind:
                return v.is_resource() && kind_in(reg_.declared_kinds(), v.resource(),
                                                  {ResourceKind::every_instance, ResourceKind::ontology_class});
            case Filter::Kind::some_kind:
                return v.is_resource() &&
                       !kind_in(reg_.declared_kinds(), v.resource(),
                                {ResourceKind::every_instance, ResourceKind::ontology_class,
                                 ResourceKind::most_instances});
        }
        return false;
    }

    bool filters_hold(const std::string& var) const {
        auto it = env_.find(var);
        if (it == env_.end()) return true;
        for (const auto& f : plan_.filters)
            if (f.var == var && !filter_ok(f, it->second)) return false;
        return true;
    }

    // Binds or compares; returns false on mismatch. newly receives the name
    // when a fresh binding was made.
    bool unify(const PlanTerm& pt, const Term& value, std::optional<std::string>& newly) {
        if (!pt.is_var()) return *pt.constant == value;
        auto it = env_.find(pt.var);
        if (it != env_.end()) return it->second == value;
        env_.emplace(pt.var, value);
        newly = pt.var;
        if (!filters_hold(pt.var)) {
            env_.erase(pt.var);
            newly.reset();
            return false;
        }
        return true;
    }

    void undo(const std::optional<std::string>& newly) {
        if (newly) env_.erase(*newly);
    }

    void solve(std::size_t part) {
        if (part == plan_.parts.size()) {
            record();
            return;
        }
        const PartPlan& pp = plan_.parts[part];
        for (const auto& g : reg_.of_class(pp.unit_class)) {
            const SemanticUnit& u = reg_.get(g);
            if (u.kind != UnitKind::statement || !u.data_graph || !u.subject) continue;
            if (u.negated != pp.negated || reg_.superseded(g)) continue;
            std::optional<std::string> s;
            if (!unify(pp.subject, Term(*u.subject), s)) continue;
            units_.push_back(g);
            match_patterns(part, *u.data_graph, 0);
            units_.pop_back();
            undo(s);
        }
    }

    void match_patterns(std::size_t part, const Iri& graph, std::size_t k) {
        const PartPlan& pp = plan_.parts[part];
        if (k == pp.patterns.size()) {
            solve(part + 1);
            return;
        }
        const TriplePattern& tp = pp.patterns[k];
        QuadPattern qp{.predicate = tp.predicate, .graph = graph};
        if (!tp.subject.is_var()) qp.subject = tp.subject.constant->resource();
        else if (auto it = env_.find(tp.subject.var); it != env_.end()) {
            if (!it->second.is_resource()) return;
            qp.subject = it->second.resource();
        }
        for (const auto& q : kg_.store().match(qp)) {
            std::optional<std::string> s, o;
            if (!unify(tp.subject, Term(q.triple.subject), s)) continue;
            if (unify(tp.object, q.triple.object, o)) {
                match_patterns(part, graph, k + 1);
                undo(o);
            }
            undo(s);
        }
    }

    void record() {
        std::vector<Term> key;
        for (const auto& v : plan_.projection) key.push_back(env_.at(v));
        auto& units = solutions_[key];
        units.insert(units_.begin(), units_.end());
    }

    const QueryPlan& plan_;
    const KnowledgeGraph& kg_;
    const UnitRegistry& reg_;
    std::map<std::string, std::regex> regexes_;
    std::map<std::string, Term> env_;
    std::vector<Iri> units_;
    std::map<std::vector<Term>, std::set<Iri>> solutions_;
};

// ---------------------------------------------------------------------------
// SPARQL text

std::string iri_ref(const Iri& i) { return "<" + i.str() + ">"; }

std::string sparql_string(std::string_view s) { return "\"" + escape_string(s) + "\""; }

std::string sparql_term(const PlanTerm& t) {
    if (t.is_var()) return "?" + t.var;
    if (t.constant->is_resource()) return iri_ref(t.constant->resource());
    return to_ntriples(*t.constant);
}

std::string decimal_literal(const Decimal& d) { return sparql_string(d.lexical()) + "^^" + iri_ref(vocab::xsd_decimal); }

}  // namespace

json question_to_json(const Question& q) {
    json parts = json::array();
    for (const auto& p : q.parts) {
        json slots = json::object();
        for (const auto& [name, b] : p.slots) slots[name] = binding_to_json(b);
        parts.push_back({{"schema", p.schema_class.str()},
                         {"subject", binding_to_json(p.subject)},
                         {"slots", slots},
                         {"negated", p.negated}});
    }
    return {{"label", q.label}, {"parts", parts}};
}

Question question_from_json(const json& j) {
    try {
        Question q;
        q.label = j.value("label", "");
        const json& parts = j.at("parts");
        if (!parts.is_array()) throw Error(ErrorCode::format, "'parts' must be a list");
        for (const auto& pj : parts) {
            QuestionPart p{vocab::expand(pj.at("schema").get<std::string>())};
            if (pj.contains("subject")) p.subject = binding_from_json(pj.at("subject"));
            if (pj.contains("slots"))
                for (const auto& [name, b] : pj.at("slots").items()) p.slots[name] = binding_from_json(b);
            p.negated = pj.value("negated", false);
            q.parts.push_back(std::move(p));
        }
        return q;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::format, std::string("malformed question: ") + e.what());
    }
}

QueryPlan compile(const Question& q, const SchemaRegistry& schemas, const Iri& layer_graph) {
    return Compiler(schemas, layer_graph).run(q);
}

ResultSet execute(const QueryPlan& plan, const KnowledgeGraph& kg) { return Executor(plan, kg).run(); }

std::string emit_sparql(const QueryPlan& plan) {
    const std::string layer = iri_ref(plan.layer_graph);
    std::ostringstream out;
    if (plan.boolean) {
        out << "ASK\n";
    } else {
        out << "SELECT DISTINCT";
        for (const auto& v : plan.projection) out << " ?" << v;
        out << "\n";
    }
    out << "WHERE {\n";
    int aux = 0;
    for (const auto& pp : plan.parts) {
        out << "  GRAPH " << layer << " {\n"
            << "    ?" << pp.unit_var << " a " << iri_ref(pp.unit_class) << " ;\n"
            << "      " << iri_ref(vocab::has_data_graph) << " ?" << pp.graph_var << " ;\n"
            << "      " << iri_ref(vocab::has_subject) << " " << sparql_term(pp.subject) << " .\n";
        if (pp.negated) out << "    ?" << pp.unit_var << " a " << iri_ref(vocab::negation_unit) << " .\n";
        out << "  }\n";
        if (!pp.negated)
            out << "  FILTER NOT EXISTS { GRAPH " << layer << " { ?" << pp.unit_var << " a "
                << iri_ref(vocab::negation_unit) << " } }\n";
        out << "  FILTER NOT EXISTS { GRAPH " << layer << " { ?_r" << aux++ << " " << iri_ref(vocab::revises)
            << " ?" << pp.unit_var << " } }\n";
        if (!pp.patterns.empty()) {
            out << "  GRAPH ?" << pp.graph_var << " {\n";
            for (const auto& tp : pp.patterns)
                out << "    " << sparql_term(tp.subject) << " " << iri_ref(tp.predicate) << " "
                    << sparql_term(tp.object) << " .\n";
            out << "  }\n";
        }
    }
    auto kinds_list = [](std::initializer_list<ResourceKind> kinds) {
        std::string s;
        for (auto k : kinds) s += (s.empty() ? "" : ", ") + iri_ref(resource_kind_class(k));
        return s;
    };
    for (const auto& f : plan.filters) {
        const std::string v = "?" + f.var;
        switch (f.kind) {
            case Filter::Kind::is_resource: out << "  FILTER(isIRI(" << v << "))\n"; break;
            case Filter::Kind::is_literal: out << "  FILTER(isLiteral(" << v << "))\n"; break;
            case Filter::Kind::datatype:
                out << "  FILTER(datatype(" << v << ") = " << iri_ref(*f.iri) << " && lang(" << v << ") = \"\")\n";
                break;
            case Filter::Kind::numeric_range:
                out << "  FILTER(isNumeric(" << v << ") && " << v << " >= " << decimal_literal(f.range->min) << " && "
                    << v << " <= " << decimal_literal(f.range->max) << ")\n";
                break;
            case Filter::Kind::regex:
                out << "  FILTER(regex(str(" << v << "), " << sparql_string(f.pattern) << "))\n";
                break;
            case Filter::Kind::instance_of: {
                std::string c = "?_c" + std::to_string(aux++);
                std::string exists = "EXISTS { GRAPH " + c + " { " + v + " a " + iri_ref(*f.iri) + " } FILTER(" + c +
                                     " != " + layer + ") }";
                if (f.pattern == "or-self") out << "  FILTER(" << v << " = " << iri_ref(*f.iri) << " || " << exists << ")\n";
                else out << "  FILTER " << exists << "\n";
                break;
            }
            case Filter::Kind::every_kind:
            case Filter::Kind::some_kind: {
                std::string k = "?_k" + std::to_string(aux++);
                bool every = f.kind == Filter::Kind::every_kind;
                std::string list = every ? kinds_list({ResourceKind::every_instance, ResourceKind::ontology_class})
                                         : kinds_list({ResourceKind::every_instance, ResourceKind::ontology_class,
                                                       ResourceKind::most_instances});
                out << "  FILTER " << (every ? "EXISTS" : "NOT EXISTS") << " { GRAPH " << layer << " { " << v << " "
                    << iri_ref(vocab::resource_kind) << " " << k << " } FILTER(" << k << " IN (" << list << ")) }\n";
                break;
            }
        }
    }
    out << "}\n";
    if (!plan.boolean) {
        out << "ORDER BY";
        for (const auto& v : plan.projection) out << " ?" << v;
        out << "\n";
    }
    return out.str();
}

json result_to_json(const ResultSet& r) {
    json j{{"boolean", r.boolean_mode}, {"variables", r.variables}};
    if (r.boolean_mode) {
        j["answer"] = r.answer;
        return j;
    }
    json rows = json::array();
    for (const auto& row : r.rows) {
        json b = json::object();
        for (const auto& [k, v] : row.bindings) b[k] = term_to_json(v);
        json units = json::array();
        for (const auto& u : row.units) units.push_back(u.str());
        rows.push_back({{"bindings", b}, {"units", units}});
    }
    j["rows"] = rows;
    return j;
}

SemanticUnit register_question(KnowledgeGraph& kg, const Question& q) {
    compile(q, kg.schemas(), kg.registry().layer_graph());
    SemanticUnit u{
        .gupri = kg.mint_gupri(),
        .unit_class = unit_kind_class(UnitKind::question),
        .kind = UnitKind::question,
        .metadata = kg.new_metadata(),
        .question_spec = question_to_json(q).dump(),
    };
    kg.registry().register_unit(u);
    return u;
}

Question question_of_unit(const SemanticUnit& unit) {
    if (unit.kind != UnitKind::question || !unit.question_spec)
        throw Error(ErrorCode::type_error, "unit " + unit.gupri.str() + " is not a question unit");
    try {
        return question_from_json(json::parse(*unit.question_spec));
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::format, std::string("stored question is corrupt: ") + e.what());
    }
}

}  // namespace semunit
