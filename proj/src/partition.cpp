#include "semunit/partition.hpp"

#include <algorithm>

#include <yaml-cpp/yaml.h>

#include "semunit/error.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

namespace {

bool is_unreserved(unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~';
}

// Writes data triples into the unit's own graph and registers it; on any
// failure the written triples are removed again.
SemanticUnit register_statement(KnowledgeGraph& kg, const Iri& unit_class, const StatementSchema* schema,
                                const Iri& subject, const std::vector<Triple>& triples, const MintOptions& options) {
    Iri gupri = kg.mint_gupri();
    std::vector<Quad> written;
    for (const auto& t : triples) {
        Quad q{t, gupri};
        if (kg.store().insert(q)) written.push_back(q);
    }
    SemanticUnit unit{
        .gupri = gupri,
        .unit_class = unit_class,
        .kind = UnitKind::statement,
        .data_graph = gupri,
        .subject = subject,
        .metadata = options.metadata.value_or(kg.new_metadata()),
        .schema_ref = schema ? std::optional<Iri>(schema->gupri) : std::nullopt,
        .logic_framework = schema ? schema->logic_framework : std::nullopt,
        .category = classify(kg.registry().kind_of(subject), schema && schema->lexical),
        .negated = options.negated,
        .revises = options.revises,
    };
    try {
        kg.registry().register_unit(unit);
    } catch (...) {
        for (const auto& q : written) kg.store().erase(q);
        throw;
    }
    return unit;
}

}  // namespace

Iri generic_unit_class(const Iri& predicate) {
    static const char* hex = "0123456789ABCDEF";
    std::string out(vocab::generic_class_ns);
    for (unsigned char c : predicate.str()) {
        if (is_unreserved(c)) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 15]);
        }
    }
    return Iri(std::move(out));
}

bool is_generic_unit_class(const Iri& unit_class) {
    return unit_class.str().rfind(vocab::generic_class_ns, 0) == 0;
}

std::optional<Iri> generic_predicate(const Iri& unit_class) {
    if (!is_generic_unit_class(unit_class)) return std::nullopt;
    std::string_view enc = std::string_view(unit_class.str()).substr(vocab::generic_class_ns.size());
    std::string out;
    for (std::size_t i = 0; i < enc.size(); ++i) {
        if (enc[i] == '%' && i + 2 < enc.size()) {
            out.push_back(static_cast<char>(std::stoi(std::string(enc.substr(i + 1, 2)), nullptr, 16)));
            i += 2;
        } else {
            out.push_back(enc[i]);
        }
    }
    if (!Iri::is_valid(out)) return std::nullopt;
    return Iri(std::move(out));
}

std::vector<Triple> instantiate_schema(const StatementSchema& schema, const SlotBindings& bindings,
                                       const std::function<Iri()>& mint_node) {
    std::map<std::vector<Iri>, Iri> nodes;
    std::vector<Triple> out;
    for (const auto& slot : schema.slots) {
        auto it = bindings.values.find(slot.name);
        if (it == bindings.values.end() || it->second.empty()) continue;
        Iri at = bindings.subject;
        std::vector<Iri> prefix;
        for (std::size_t i = 0; i + 1 < slot.path.size(); ++i) {
            prefix.push_back(slot.path[i]);
            auto node = nodes.find(prefix);
            if (node == nodes.end()) {
                node = nodes.emplace(prefix, mint_node()).first;
                out.push_back({at, slot.path[i], node->second});
            }
            at = node->second;
        }
        for (const auto& v : it->second) out.push_back({at, slot.path.back(), v});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SemanticUnit mint_statement_unit(KnowledgeGraph& kg, const StatementSchema& schema, const SlotBindings& bindings,
                                 const MintOptions& options) {
    for (const auto& [name, _] : bindings.values)
        if (!schema.slot(name))
            throw Error(ErrorCode::validation, "schema " + schema.unit_class.str() + " has no slot '" + name + "'");
    if (options.negated && !schema.negatable())
        throw Error(ErrorCode::validation, "schema " + schema.unit_class.str() + " does not support negation");
    if (options.revises && !kg.registry().contains(*options.revises))
        throw Error(ErrorCode::not_found, "unknown unit " + options.revises->str());

    // Placeholder nodes keep validation free of side effects on the minter.
    std::size_t counter = 0;
    auto placeholder = [&] { return Iri("urn:semunit:pending:" + std::to_string(counter++)); };
    auto draft = instantiate_schema(schema, bindings, placeholder);
    if (draft.empty())
        throw Error(ErrorCode::validation, "statement rejected: no slot values, the data graph would be empty");
    auto& reg = kg.registry();
    validate_triples(schema, bindings.subject, reg.kind_of(bindings.subject), draft,
                     store_type_oracle(kg.store(), reg.layer_graph()))
        .throw_if_invalid("statement rejected");

    auto triples = instantiate_schema(schema, bindings, [&] { return kg.mint_gupri(); });
    return register_statement(kg, schema.unit_class, &schema, bindings.subject, triples, options);
}

StatementCategory classify_statement(const UnitRegistry& registry, const SchemaRegistry& schemas,
                                     const SemanticUnit& unit) {
    const StatementSchema* schema = schemas.by_class(unit.unit_class);
    if (!unit.subject) throw Error(ErrorCode::type_error, "unit " + unit.gupri.str() + " has no subject");
    return classify(registry.kind_of(*unit.subject), schema && schema->lexical);
}

SemanticUnit statement_about_unit(KnowledgeGraph& kg, const Iri& subject_unit, const StatementSchema& schema,
                                  SlotBindings bindings, const MintOptions& options) {
    if (!kg.registry().contains(subject_unit))
        throw Error(ErrorCode::not_found, "unknown unit " + subject_unit.str());
    if (!schema.accepts_subject_kind(ResourceKind::semantic_unit))
        throw Error(ErrorCode::validation,
                    "schema " + schema.unit_class.str() + " does not accept semantic-unit subjects");
    bindings.subject = subject_unit;
    return mint_statement_unit(kg, schema, bindings, options);
}

SemanticUnit negate_statement_unit(KnowledgeGraph& kg, const Iri& gupri) {
    const SemanticUnit original = kg.registry().get(gupri);
    if (original.kind != UnitKind::statement)
        throw Error(ErrorCode::type_error, "unit " + gupri.str() + " is not a statement unit");
    if (original.negated) throw Error(ErrorCode::conflict, "unit " + gupri.str() + " is already negated");
    if (kg.registry().superseded(gupri))
        throw Error(ErrorCode::conflict, "unit " + gupri.str() + " has already been revised");
    const StatementSchema* schema = kg.schemas().by_class(original.unit_class);
    if (!schema || !schema->negatable())
        throw Error(ErrorCode::validation, "class " + original.unit_class.str() + " does not support negation");

    // Same content, renamed intermediate nodes so the new graph owns its own.
    auto data = kg.store().graph(*original.data_graph);
    auto ex = extract_slots(*schema, *original.subject, data);
    SlotBindings bindings{*original.subject, ex.values};
    UnitMetadata md = kg.new_metadata();
    md.creator = original.metadata.creator;
    md.author = original.metadata.author;
    md.license = original.metadata.license;
    return mint_statement_unit(kg, *schema, bindings, {.negated = true, .metadata = md, .revises = gupri});
}

void declare_resource(KnowledgeGraph& kg, const Iri& resource, ResourceKind kind, const std::optional<Iri>& cls) {
    kg.registry().declare_kind(resource, kind);
    if (!cls) return;
    auto oracle = store_type_oracle(kg.store(), kg.registry().layer_graph());
    if (resource != *cls && !oracle(resource, *cls))
        ingest_triples(kg, {Triple{resource, vocab::instance_of, *cls}});
}

std::string PartitionReport::to_yaml() const {
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "units_created" << YAML::Value << YAML::BeginMap;
    for (const auto& [cls, n] : units_created) out << YAML::Key << cls.str() << YAML::Value << n;
    out << YAML::EndMap;
    out << YAML::Key << "generic_units" << YAML::Value << generic_units;
    out << YAML::Key << "triples_total" << YAML::Value << triples_total;
    out << YAML::Key << "triples_claimed" << YAML::Value << triples_claimed;
    out << YAML::Key << "unmatched_predicates" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : unmatched_predicates) out << p.str();
    out << YAML::EndSeq << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

Partition partition_graph(std::span<const Triple> raw_in, const SchemaRegistry& schemas,
                          const std::function<ResourceKind(const Iri&)>& kind_of, const TypeOracle& is_instance) {
    std::set<Triple> unclaimed(raw_in.begin(), raw_in.end());
    Partition result;
    result.report.triples_total = unclaimed.size();

    std::map<Iri, std::vector<Triple>> out_edges;
    std::set<Iri> first_predicates;
    for (const auto& t : unclaimed) out_edges[t.subject].push_back(t);

    for (const StatementSchema* schema : schemas.by_specificity()) {
        std::size_t depth = 0;
        first_predicates.clear();
        for (const auto& slot : schema->slots) {
            depth = std::max(depth, slot.path.size());
            first_predicates.insert(slot.path.front());
        }
        for (const auto& [subject, _] : out_edges) {
            // Unclaimed triples reachable from the subject within the path depth.
            std::vector<Triple> local;
            std::set<Iri> frontier{subject}, seen{subject};
            for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
                std::set<Iri> next;
                for (const auto& node : frontier) {
                    auto edges = out_edges.find(node);
                    if (edges == out_edges.end()) continue;
                    for (const auto& t : edges->second) {
                        if (!unclaimed.count(t) || (d == 0 && !first_predicates.count(t.predicate))) continue;
                        local.push_back(t);
                        if (const Iri* r = t.object.as_resource(); r && seen.insert(*r).second) next.insert(*r);
                    }
                }
                frontier = std::move(next);
            }
            if (local.empty()) continue;
            auto try_claim = [&](const std::vector<Triple>& pool) {
                auto ex = extract_slots(*schema, subject, pool);
                if (ex.covered.empty()) return false;
                std::vector<Triple> claim(ex.covered.begin(), ex.covered.end());
                if (!validate_triples(*schema, subject, kind_of(subject), claim, is_instance).valid()) return false;
                for (const auto& t : claim) unclaimed.erase(t);
                result.report.units_created[schema->unit_class]++;
                result.report.triples_claimed += claim.size();
                result.matches.push_back({schema, subject, std::move(claim)});
                return true;
            };
            if (try_claim(local)) continue;

            // Too many values for one instance: split into one instance per
            // branch, pairing the k-th branch of every first-hop predicate.
            std::map<Iri, std::vector<std::vector<Triple>>> branches;
            for (const auto& t : local) {
                if (t.subject != subject) continue;
                std::vector<Triple> branch{t};
                std::set<Iri> reach;
                if (const Iri* r = t.object.as_resource()) reach.insert(*r);
                for (bool grew = true; grew;) {
                    grew = false;
                    for (const auto& u : local)
                        if (reach.count(u.subject) && u.subject != subject &&
                            std::find(branch.begin(), branch.end(), u) == branch.end()) {
                            branch.push_back(u);
                            if (const Iri* r = u.object.as_resource()) reach.insert(*r);
                            grew = true;
                        }
                }
                branches[t.predicate].push_back(std::move(branch));
            }
            std::size_t rounds = 0;
            for (const auto& [_, bs] : branches) rounds = std::max(rounds, bs.size());
            if (rounds < 2) continue;
            for (std::size_t k = 0; k < rounds; ++k) {
                std::vector<Triple> pool;
                for (const auto& [_, bs] : branches)
                    if (k < bs.size())
                        for (const auto& t : bs[k])
                            if (unclaimed.count(t)) pool.push_back(t);
                try_claim(pool);
            }
        }
    }

    std::set<Iri> unmatched;
    for (const auto& t : unclaimed) {
        result.generic.push_back(t);
        unmatched.insert(t.predicate);
    }
    result.report.generic_units = result.generic.size();
    result.report.triples_claimed += result.generic.size();
    result.report.unmatched_predicates.assign(unmatched.begin(), unmatched.end());
    return result;
}

namespace {

struct PreparedInput {
    std::vector<Triple> data;
    std::map<Iri, ResourceKind> declared;
};

PreparedInput prepare_input(const KnowledgeGraph& kg, std::vector<Triple> raw) {
    const Iri& layer = kg.registry().layer_graph();
    PreparedInput in;
    for (auto& t : raw) {
        if (t.predicate == vocab::resource_kind) {
            const Iri* cls = t.object.as_resource();
            auto kind = cls ? resource_kind_from_class(*cls) : std::nullopt;
            if (!kind)
                throw Error(ErrorCode::validation, "unknown resource kind for <" + t.subject.str() + ">");
            in.declared[t.subject] = *kind;
            continue;
        }
        bool owned = false;
        for (const auto& q : kg.store().match({.subject = t.subject, .predicate = t.predicate, .object = t.object}))
            if (q.graph != layer) owned = true;
        if (!owned) in.data.push_back(std::move(t));
    }
    std::sort(in.data.begin(), in.data.end());
    in.data.erase(std::unique(in.data.begin(), in.data.end()), in.data.end());
    return in;
}

Partition partition_prepared(const KnowledgeGraph& kg, const PreparedInput& in) {
    std::set<std::pair<Iri, Iri>> raw_types;
    for (const auto& t : in.data)
        if (t.predicate == vocab::instance_of && t.object.is_resource())
            raw_types.emplace(t.subject, t.object.resource());
    auto stored = store_type_oracle(kg.store(), kg.registry().layer_graph());
    TypeOracle oracle = [&](const Iri& r, const Iri& c) { return raw_types.count({r, c}) > 0 || stored(r, c); };
    auto kind_of = [&](const Iri& r) {
        auto it = in.declared.find(r);
        return it != in.declared.end() ? it->second : kg.registry().kind_of(r);
    };
    return partition_graph(in.data, kg.schemas(), kind_of, oracle);
}

}  // namespace

Partition preview_partition(const KnowledgeGraph& kg, std::vector<Triple> raw) {
    return partition_prepared(kg, prepare_input(kg, std::move(raw)));
}

PartitionReport ingest_triples(KnowledgeGraph& kg, std::vector<Triple> raw) {
    PreparedInput in = prepare_input(kg, std::move(raw));
    for (const auto& [r, k] : in.declared) kg.registry().declare_kind(r, k);
    Partition p = partition_prepared(kg, in);
    for (const auto& m : p.matches)
        register_statement(kg, m.schema->unit_class, m.schema, m.subject, m.triples, {});
    for (const auto& t : p.generic)
        register_statement(kg, generic_unit_class(t.predicate), nullptr, t.subject, {t}, {});
    return p.report;
}

}  // namespace semunit
