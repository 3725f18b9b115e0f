#include "generators.hpp"

#include <algorithm>

#include "semunit/error.hpp"
#include "semunit/partition.hpp"
#include "semunit/registry.hpp"
#include "semunit/vocab.hpp"
#include "fixtures.hpp"

namespace semunit::testing {

Pools Pools::standard(std::size_t resources) {
    Pools p;
    for (std::size_t i = 0; i < resources; ++i) p.resources.emplace_back("https://example.org/kg/r" + std::to_string(i));
    for (int i = 0; i < 4; ++i) p.classes.emplace_back("https://example.org/kg/C" + std::to_string(i));
    for (int i = 0; i < 6; ++i) p.predicates.emplace_back("https://example.org/kg/p" + std::to_string(i));
    p.words = {"alpha", "beta", "gamma", "delta", "alps", "bet"};
    return p;
}

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

namespace {

Literal random_decimal(Rng& rng) {
    int whole = static_cast<int>(pick(rng, 13));
    return Literal(chance(rng, 0.5) ? std::to_string(whole) + ".5" : std::to_string(whole), vocab::xsd_decimal);
}

}  // namespace

std::vector<StatementSchema> random_schemas(Rng& rng, const Pools& pools, std::size_t count, const std::string& tag) {
    std::vector<StatementSchema> out;
    SchemaRegistry probe;
    std::size_t attempts = 0;
    while (out.size() < count && attempts++ < count * 50) {
        const std::string name = "Gen" + tag + "_" + std::to_string(out.size());
        const Iri cls("https://w3id.org/semunit/classes#" + name);
        StatementSchema s{.gupri = Iri(cls.str() + "Shape"), .unit_class = cls};
        if (chance(rng, 0.2)) s.subject_kinds = {ResourceKind::named_individual, ResourceKind::some_instance};
        if (chance(rng, 0.2)) s.subject_class = pick_from(rng, pools.classes);
        const std::size_t slots = 1 + pick(rng, 3);
        std::string label = "${subject}";
        for (std::size_t i = 0; i < slots; ++i) {
            Slot slot;
            slot.name = "s" + std::to_string(i);
            const std::size_t len = chance(rng, 0.6) ? 1 : 2 + pick(rng, 2);
            // Slots of one schema sometimes branch off a shared first hop.
            if (i > 0 && len > 1 && !s.slots.front().path.empty() && chance(rng, 0.4))
                slot.path.push_back(s.slots.front().path.front());
            while (slot.path.size() < len) slot.path.push_back(pick_from(rng, pools.predicates));
            if (chance(rng, 0.4)) {
                slot.value_kind = ValueKind::literal;
                if (chance(rng, 0.6)) {
                    slot.datatype = vocab::xsd_decimal;
                    if (chance(rng, 0.5)) slot.numeric_range = NumericRange{Decimal::from_string("0"), Decimal::from_string("10")};
                } else {
                    slot.datatype = xsd_string();
                    if (chance(rng, 0.3)) slot.pattern = "^al";
                }
            } else if (chance(rng, 0.3)) {
                slot.class_constraint = pick_from(rng, pools.classes);
            }
            switch (pick(rng, 5)) {
                case 0: slot.cardinality = {0, 1}; break;
                case 1: slot.cardinality = {1, std::nullopt}; break;
                default: break;
            }
            label += " " + slot.name + " ${" + slot.name + "}";
            s.slots.push_back(std::move(slot));
        }
        s.label_template = label;
        if (chance(rng, 0.4)) s.negated_label_template = "not: " + label;
        try {
            check_schema(s);
            probe.add(s);
        } catch (const Error&) {
            continue;
        }
        out.push_back(std::move(s));
    }
    return out;
}

Term random_slot_value(Rng& rng, const Pools& pools, const Slot& slot) {
    if (slot.value_kind == ValueKind::resource) return pick_from(rng, pools.resources);
    if (slot.datatype && *slot.datatype == vocab::xsd_decimal) {
        // Occasionally out of range so that validation has something to reject.
        if (chance(rng, 0.1)) return Literal("42", vocab::xsd_decimal);
        return random_decimal(rng);
    }
    return Literal(pick_from(rng, pools.words));
}

std::vector<Triple> random_raw_graph(Rng& rng, const Pools& pools, const std::vector<StatementSchema>& schemas,
                                     std::size_t max_triples) {
    std::set<Triple> out;
    std::size_t node = 0;
    const std::size_t target = pick(rng, max_triples + 1);
    while (out.size() < target) {
        std::vector<Triple> add;
        if (!schemas.empty() && chance(rng, 0.6)) {
            const StatementSchema& s = pick_from(rng, schemas);
            SlotBindings b{pick_from(rng, pools.resources), {}};
            for (const auto& slot : s.slots) {
                std::size_t n = slot.cardinality.max == 1 ? 1 : 1 + pick(rng, 2);
                if (slot.cardinality.min == 0 && chance(rng, 0.3)) n = 0;
                for (std::size_t i = 0; i < n; ++i) b.values[slot.name].push_back(random_slot_value(rng, pools, slot));
            }
            add = instantiate_schema(s, b, [&] { return Iri("https://example.org/kg/n" + std::to_string(node++)); });
            // Partial instances exercise the fallback path.
            if (!add.empty() && chance(rng, 0.2)) add.erase(add.begin() + static_cast<std::ptrdiff_t>(pick(rng, add.size())));
        } else if (chance(rng, 0.3)) {
            add.push_back({pick_from(rng, pools.resources), vocab::instance_of, pick_from(rng, pools.classes)});
        } else {
            Term o = chance(rng, 0.5) ? Term(pick_from(rng, pools.resources)) : Term(random_decimal(rng));
            add.push_back({pick_from(rng, pools.resources), pick_from(rng, pools.predicates), o});
        }
        for (auto& t : add) {
            if (out.size() >= target) break;
            out.insert(std::move(t));
        }
    }
    return {out.begin(), out.end()};
}

std::size_t populate(KnowledgeGraph& kg, Rng& rng, const Pools& pools, const StoreShape& shape) {
    auto& reg = kg.registry();
    const Timestamp now = kg.now();
    auto data_triples = [&] { return kg.store().size() - kg.store().graph_size(reg.layer_graph()); };
    auto age = [&] {
        if (shape.max_age_days <= 0) return now;
        return now - std::chrono::days(pick(rng, static_cast<std::size_t>(shape.max_age_days) + 1)) -
               std::chrono::seconds(pick(rng, 86400));
    };

    for (const auto& r : pools.resources) {
        if (chance(rng, shape.declared)) {
            static const std::vector<ResourceKind> kinds{ResourceKind::named_individual, ResourceKind::some_instance,
                                                         ResourceKind::every_instance, ResourceKind::ontology_class,
                                                         ResourceKind::most_instances};
            reg.declare_kind(r, pick_from(rng, kinds));
        }
    }
    std::vector<Triple> types;
    for (const auto& r : pools.resources)
        if (chance(rng, shape.typed)) types.push_back({r, vocab::instance_of, pick_from(rng, pools.classes)});
    if (!types.empty()) ingest_triples(kg, types);

    const auto schemas = kg.schemas().all();
    if (schemas.empty()) return data_triples();
    for (std::size_t i = 0; i < shape.statements * 3 && reg.of_kind(UnitKind::statement).size() < shape.statements + types.size(); ++i) {
        const StatementSchema& s = *pick_from(rng, schemas);
        SlotBindings b{pick_from(rng, pools.resources), {}};
        std::size_t added = 0;
        for (const auto& slot : s.slots) {
            std::size_t n = slot.cardinality.min == 0 && chance(rng, 0.3) ? 0 : 1;
            if (!slot.cardinality.max && chance(rng, 0.3)) n = 2;
            for (std::size_t k = 0; k < n; ++k) b.values[slot.name].push_back(random_slot_value(rng, pools, slot));
            added += n * slot.path.size();
        }
        if (data_triples() + added > shape.max_triples) break;
        MintOptions opts;
        opts.negated = s.negatable() && chance(rng, shape.negate);
        UnitMetadata md = kg.new_metadata();
        md.created = age();
        md.last_updated = chance(rng, 0.3) ? std::min(now, md.created + std::chrono::days(pick(rng, 30))) : md.created;
        opts.metadata = md;
        try {
            SemanticUnit u = mint_statement_unit(kg, s, b, opts);
            if (!u.negated && s.negatable() && chance(rng, shape.supersede) &&
                data_triples() + kg.store().graph_size(*u.data_graph) <= shape.max_triples)
                negate_statement_unit(kg, u.gupri);
        } catch (const Error&) {
            // Constraint violations are expected for random bindings.
        }
    }
    return data_triples();
}

StatementSchema relation_schema() {
    const Iri cls("https://w3id.org/semunit/classes#GenHasPartStatementUnit");
    StatementSchema s{.gupri = Iri(cls.str() + "Shape"), .unit_class = cls};
    Slot part{.name = "part", .path = {Iri("https://example.org/kg/hasPart")}};
    part.cardinality = {1, std::nullopt};
    s.slots.push_back(part);
    s.label_template = "${subject} has part ${part}";
    s.negated_label_template = "${subject} has no part ${part}";
    s.mindmap_template = {{"subject", "has part", "part"}};
    return s;
}

RandomStore random_store(std::uint64_t seed, const StoreShape& shape, std::size_t max_schemas, bool with_relation) {
    Rng rng(seed);
    RandomStore r{make_kg(seed, false), {}, Pools::standard(6 + pick(rng, 8))};
    r.schemas = random_schemas(rng, r.pools, 1 + pick(rng, max_schemas), std::to_string(seed % 7));
    if (with_relation) r.schemas.push_back(relation_schema());
    for (const auto& s : r.schemas) r.kg->schemas().add(s);
    populate(*r.kg, rng, r.pools, shape);
    return r;
}

Question random_question(Rng& rng, const SchemaRegistry& schemas, const Pools& pools) {
    static const std::vector<std::string> resource_vars{"x", "y", "z"};
    static const std::vector<std::string> literal_vars{"v", "w"};
    const auto all = schemas.all();
    Question q;
    q.label = "generated";
    const std::size_t parts = chance(rng, 0.3) ? 2 : 1;
    auto resource_binding = [&]() -> Binding {
        double r = std::uniform_real_distribution<double>(0, 1)(rng);
        if (r < 0.25) return FixedValue{pick_from(rng, pools.resources)};
        if (r < 0.35) return Unbound{};
        ResourceVariable v{pick_from(rng, resource_vars)};
        if (chance(rng, 0.25)) v.class_constraint = pick_from(rng, pools.classes);
        v.quantifier = chance(rng, 0.2) ? Quantifier::every : Quantifier::some;
        return v;
    };
    for (std::size_t i = 0; i < parts; ++i) {
        const StatementSchema& s = *pick_from(rng, all);
        QuestionPart p{s.unit_class};
        p.negated = s.negatable() && chance(rng, 0.2);
        p.subject = resource_binding();
        for (const auto& slot : s.slots) {
            if (chance(rng, 0.2)) continue;
            if (slot.value_kind == ValueKind::resource) {
                p.slots[slot.name] = resource_binding();
                continue;
            }
            double r = std::uniform_real_distribution<double>(0, 1)(rng);
            if (r < 0.25) {
                p.slots[slot.name] = FixedValue{random_slot_value(rng, pools, slot)};
            } else if (r < 0.3) {
                p.slots[slot.name] = Unbound{};
            } else {
                LiteralVariable v{pick_from(rng, literal_vars)};
                if (chance(rng, 0.2)) v.datatype = chance(rng, 0.5) ? vocab::xsd_decimal : xsd_string();
                bool numeric = (v.datatype ? *v.datatype : slot.datatype.value_or(xsd_string())) == vocab::xsd_decimal;
                if (numeric && chance(rng, 0.5)) {
                    int lo = static_cast<int>(pick(rng, 10));
                    v.range = NumericRange{Decimal::from_string(std::to_string(lo)),
                                           Decimal::from_string(std::to_string(lo + static_cast<int>(pick(rng, 6))))};
                }
                if (!numeric && chance(rng, 0.3)) v.pattern = chance(rng, 0.5) ? "^al" : "ta$";
                p.slots[slot.name] = v;
            }
        }
        q.parts.push_back(std::move(p));
    }
    return q;
}

}  // namespace semunit::testing
