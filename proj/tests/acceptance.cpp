// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "semunit/error.hpp"
#include "semunit/exploration.hpp"
#include "semunit/interop.hpp"
#include "semunit/isomorphism.hpp"
#include "semunit/json_io.hpp"
#include "semunit/rdf_io.hpp"
#include "semunit/render.hpp"
#include "semunit/vocab.hpp"

using namespace semunit;
using namespace semunit::testing;
namespace fs = std::filesystem;
using Wall = std::chrono::steady_clock;

namespace {

// Thrown to fail a criterion with a reason.
struct Failure {
    std::string reason;
};

void require(bool ok, const std::string& reason) {
    if (!ok) throw Failure{reason};
}

void require_empty(const std::string& problem, const std::string& where) {
    if (!problem.empty()) throw Failure{where + ": " + problem};
}

double seconds_since(Wall::time_point start) {
    return std::chrono::duration<double>(Wall::now() - start).count();
}

std::string fmt_seconds(double s) {
    std::ostringstream out;
    out.precision(2);
    out << std::fixed << s << " s";
    return out.str();
}

// ---------------------------------------------------------------------------

std::string partition_law() {
    constexpr int graphs = 1000;
    constexpr double budget = 60.0;
    auto start = Wall::now();
    std::size_t triples = 0, matched = 0;
    for (int i = 0; i < graphs; ++i) {
        Rng rng(1000 + i);
        Pools pools = Pools::standard(6 + pick(rng, 10));
        auto schemas = random_schemas(rng, pools, 1 + pick(rng, 5), std::to_string(i % 5));
        SchemaRegistry reg;
        for (const auto& s : schemas) reg.add(s);
        auto raw = random_raw_graph(rng, pools, schemas, 200);
        require(raw.size() <= 200, "generator exceeded 200 triples");
        triples += raw.size();

        std::map<Iri, ResourceKind> kinds;
        for (const auto& r : pools.resources)
            if (chance(rng, 0.2)) kinds[r] = ResourceKind::some_instance;
        auto kind_of = [&](const Iri& r) {
            auto it = kinds.find(r);
            return it == kinds.end() ? ResourceKind::named_individual : it->second;
        };
        std::set<std::pair<Iri, Iri>> types;
        for (const auto& t : raw)
            if (t.predicate == vocab::instance_of && t.object.is_resource()) types.insert({t.subject, t.object.resource()});
        TypeOracle oracle = [&](const Iri& r, const Iri& c) { return r == c || types.count({r, c}) > 0; };

        Partition p = partition_graph(raw, reg, kind_of, oracle);
        matched += p.matches.size();
        require_empty(check_partition_law(raw, p, kind_of, oracle), "graph " + std::to_string(i));
        require(p.report.triples_total == std::set<Triple>(raw.begin(), raw.end()).size(), "report total");

        // The store-level path must obey the same law.
        if (i % 10 == 0) {
            auto kg = make_kg(i, false);
            for (const auto& s : schemas) kg->schemas().add(s);
            ingest_triples(*kg, raw);
            require_empty(check_ingested(*kg, raw), "ingested graph " + std::to_string(i));
        }
    }
    double t = seconds_since(start);
    require(matched > graphs, "generator produced too few schema matches");
    require(t < budget, "took " + fmt_seconds(t) + " (budget 60 s)");
    return std::to_string(graphs) + " graphs, " + std::to_string(triples) + " triples, " + std::to_string(matched) +
           " schema matches, " + fmt_seconds(t);
}

std::string weight_statement() {
    auto kg = make_kg();
    load_orchard(*kg);
    const auto& reg = kg->registry();
    Iri weight = statement_of(*kg, suc("WeightStatementUnit"), ex("apple-X"));
    const SemanticUnit& u = reg.get(weight);
    const StatementSchema& schema = kg->schemas().get_by_class(u.unit_class);

    std::string label = render_label(reg, schema, u);
    require(label == "Apple X has a weight of 204.56 grams", "label was \"" + label + "\"");

    require(kg->store().contains(Quad{{weight, vocab::instance_of, suc("WeightStatementUnit")}, reg.layer_graph()}),
            "layer lacks the instance-of triple");

    auto mindmap = render_mindmap(reg, schema, u);
    std::set<Iri> resources;
    for (const auto& t : kg->store().graph(*u.data_graph)) {
        resources.insert(t.subject);
        if (const Iri* o = t.object.as_resource()) resources.insert(*o);
    }
    require(mindmap.nodes.size() < resources.size(), "mind-map has " + std::to_string(mindmap.nodes.size()) +
                                                         " nodes for " + std::to_string(resources.size()) + " resources");
    return "label ok, " + std::to_string(mindmap.nodes.size()) + " mind-map nodes < " +
           std::to_string(resources.size()) + " data-graph resources";
}

std::string travel_label() {
    auto kg = make_kg();
    ingest_triples(*kg, {{ex("carla"), vocab::rdfs_label, Literal("Carla")},
                         {ex("train"), vocab::rdfs_label, Literal("train")},
                         {ex("paris"), vocab::rdfs_label, Literal("Paris")},
                         {ex("berlin"), vocab::rdfs_label, Literal("Berlin")}});
    const StatementSchema& schema = kg->schemas().get_by_class(suc("TravelStatementUnit"));
    SlotBindings b{ex("carla"),
                   {{"transportation", {ex("train")}},
                    {"departure", {ex("paris")}},
                    {"destination", {ex("berlin")}},
                    {"date", {Literal("29th of June 2022")}}}};
    SemanticUnit u = mint_statement_unit(*kg, schema, b);
    std::string label = render_label(kg->registry(), schema, u);
    const std::string want = "Carla travels by train from Paris to Berlin on the 29th of June 2022";
    require(label == want, "label was \"" + label + "\"");
    return "\"" + label + "\"";
}

std::string weight_question() {
    auto kg = make_kg();
    load_orchard(*kg);
    Question q = question_from_json(read_json(data_dir() / "fixtures" / "weight_question.json"));
    QueryPlan plan = compile(q, kg->schemas(), kg->registry().layer_graph());
    ResultSet rs = execute(plan, *kg);
    require(rs.variables == std::vector<std::string>{"apple", "weight"}, "unexpected projection");
    require(rs.rows.size() == 1, "execute returned " + std::to_string(rs.rows.size()) + " rows");
    require(rs.rows[0].bindings.at("apple") == Term(ex("apple-X")), "execute returned the wrong apple");
    require(rs.rows[0].bindings.at("weight") == Term(Literal("204.56", vocab::xsd_decimal)), "wrong weight binding");

    require(python_oracle_available(), "python3 with rdflib is required for the external engine");
    fs::path dir = scratch_dir("weight-question");
    {
        std::ofstream(dir / "store.nq") << export_nquads(*kg);
        std::ofstream(dir / "query.rq") << emit_sparql(plan);
    }
    auto out = run_rdf_oracle(nlohmann::json::array(
        {{"sparql", (dir / "store.nq").string(), (dir / "query.rq").string()}}))[0];
    fs::remove_all(dir);
    require(!out.contains("error"), "external engine: " + out.value("error", std::string()));
    require(out["rows"].size() == 1, "external engine returned " + std::to_string(out["rows"].size()) + " rows");
    const auto& row = out["rows"][0];
    auto vars = out["variables"].get<std::vector<std::string>>();
    for (std::size_t i = 0; i < vars.size(); ++i)
        require(term_from_json(row[i]) == rs.rows[0].bindings.at(vars[i]), "engines disagree on ?" + vars[i]);
    return "apple X (204.56) from execute() and rdflib";
}

std::string query_oracle() {
    constexpr int pairs = 500;
    constexpr double budget = 120.0;
    auto start = Wall::now();
    std::size_t rows = 0, non_empty = 0, booleans = 0, skipped_compile = 0;
    for (int i = 0; i < pairs; ++i) {
        StoreShape shape;
        shape.statements = 10 + i % 25;
        shape.max_triples = 200;
        auto store = random_store(5000 + i, shape, 4);
        require(store.kg->store().size() - store.kg->store().graph_size(store.kg->registry().layer_graph()) <= 200,
                "store exceeded 200 data triples");
        Rng rng(90000 + i);
        std::optional<QueryPlan> plan;
        Question q;
        for (int attempt = 0; attempt < 50 && !plan; ++attempt) {
            q = random_question(rng, store.kg->schemas(), store.pools);
            try {
                plan = compile(q, store.kg->schemas(), store.kg->registry().layer_graph());
            } catch (const Error&) {
                ++skipped_compile;
            }
        }
        require(plan.has_value(), "no compilable question for pair " + std::to_string(i));
        ResultSet rs = execute(*plan, *store.kg);
        OracleAnswer oracle = answer_question(*store.kg, q);
        require_empty(compare_answers(rs, oracle, plan->projection), "pair " + std::to_string(i));
        rows += rs.rows.size();
        if (rs.answer) ++non_empty;
        if (rs.boolean_mode) ++booleans;
    }
    double t = seconds_since(start);
    require(non_empty >= pairs / 5, "too few questions with answers (" + std::to_string(non_empty) + ")");
    require(t < budget, "took " + fmt_seconds(t) + " (budget 120 s)");
    return std::to_string(pairs) + " pairs, " + std::to_string(non_empty) + " with answers, " + std::to_string(rows) +
           " rows, " + std::to_string(booleans) + " boolean, " + fmt_seconds(t);
}

std::string negated_statement() {
    auto kg = make_kg();
    auto fx = load_anatomy(*kg);
    const SemanticUnit& u = kg->registry().get(fx.negated_unit);
    require(u.unit_class == suc("HasPartStatementUnit"), "unit class " + u.unit_class.str());
    require(u.category == StatementCategory::assertional, "category is not assertional");
    require(u.negated, "unit is not flagged negated");
    auto data = kg->store().graph(*u.data_graph);
    require(!data.empty(), "empty data graph");
    for (const auto& t : data)
        for (const std::string& s : {t.subject.str(), t.object.is_resource() ? t.object.resource().str() : std::string()})
            require(s.rfind("_:", 0) != 0 && s.rfind(std::string(skolem_prefix), 0) != 0,
                    "blank node in data graph: " + s);

    Question q{"head parts", {QuestionPart{suc("HasPartStatementUnit")}}};
    q.parts[0].subject = FixedValue{ex("head-x")};
    q.parts[0].slots["part"] = ResourceVariable{"part"};
    ResultSet rs = execute(compile(q, kg->schemas(), kg->registry().layer_graph()), *kg);
    for (const auto& row : rs.rows)
        require(!row.units.count(fx.negated_unit), "positive question matched the negated unit");

    q.parts[0].negated = true;
    ResultSet neg = execute(compile(q, kg->schemas(), kg->registry().layer_graph()), *kg);
    require(neg.rows.size() == 1 && neg.rows[0].units.count(fx.negated_unit), "negated question misses the unit");
    return "has-part unit, assertional, negated, " + std::to_string(data.size()) +
           " data triples without blank nodes, positive question: " + std::to_string(rs.rows.size()) + " rows";
}

std::string compound_laws() {
    constexpr int registries = 200;
    std::size_t items = 0, groups = 0, contexts = 0, trees = 0, rejected = 0;
    const StatementSchema rel = relation_schema();
    for (int i = 0; i < registries; ++i) {
        StoreShape shape;
        shape.statements = 15 + i % 20;
        auto store = random_store(20000 + i, shape, 3, true);
        KnowledgeGraph& kg = *store.kg;
        Rng rng(30000 + i);

        // A planted partonomy (sometimes broken) and a few aboutness triples.
        const std::string tag = "t" + std::to_string(i) + "-";
        const std::size_t nodes = 3 + pick(rng, 4);
        for (std::size_t k = 1; k < nodes; ++k) {
            std::size_t parent = pick(rng, k);
            mint_statement_unit(kg, rel, {ex(tag + std::to_string(parent)), {{"part", {ex(tag + std::to_string(k))}}}});
        }
        if (chance(rng, 0.3))
            mint_statement_unit(kg, rel, {ex(tag + std::to_string(nodes - 1)), {{"part", {ex(tag + "0")}}}});
        std::vector<Triple> about;
        for (int k = 0; k < 3; ++k)
            about.push_back({pick_from(rng, store.pools.resources), vocab::is_about, pick_from(rng, store.pools.resources)});
        ingest_triples(kg, about);

        BuildConfig config;
        config.perspectives.push_back({rel.unit_class, "partonomy"});
        auto built = build_all(kg, config);
        const auto& reg = kg.registry();
        const std::string where = "registry " + std::to_string(i);

        std::map<Iri, std::set<Iri>> got_items;
        for (const auto& g : reg.of_kind(UnitKind::item)) {
            const auto& u = reg.get(g);
            got_items[*u.subject].insert(u.members.begin(), u.members.end());
        }
        require(got_items == expected_items(kg), where + ": item units differ from group-by-subject");

        std::set<std::set<Iri>> got_groups;
        for (const auto& g : reg.of_kind(UnitKind::item_group)) {
            std::set<Iri> subjects;
            for (const auto& m : reg.get(g).members) subjects.insert(*reg.get(m).subject);
            got_groups.insert(subjects);
        }
        require(got_groups == expected_item_groups(kg), where + ": item groups differ from linkage components");

        std::set<std::set<Iri>> got_contexts;
        for (const auto& g : reg.of_kind(UnitKind::context)) {
            const auto& m = reg.get(g).members;
            got_contexts.insert(std::set<Iri>(m.begin(), m.end()));
        }
        require(got_contexts == expected_contexts(kg, config), where + ": contexts differ from union-find components");

        auto want = expected_trees(kg, rel.unit_class, rel.slots[0].path[0]);
        std::set<std::set<Iri>> got_trees;
        for (const auto& g : reg.of_kind(UnitKind::granularity_tree)) {
            const auto& m = reg.get(g).members;
            std::vector<std::pair<Iri, Iri>> edges;
            for (const auto& s : m)
                for (const auto& e : relation_edges(kg, reg.get(s))) edges.push_back(e);
            require(is_rooted_tree(edges), where + ": tree unit fails the acyclicity/unique-root check");
            got_trees.insert(std::set<Iri>(m.begin(), m.end()));
        }
        require(got_trees == want.trees, where + ": granularity trees differ from the oracle");
        std::size_t diagnostics = 0;
        for (const auto& d : built.at(UnitKind::granularity_tree).diagnostics)
            if (d.rfind("cycle:", 0) == 0 || d.rfind("multiple-parents:", 0) == 0) ++diagnostics;
        require(diagnostics == want.rejected, where + ": rejected components without matching diagnostics");

        items += got_items.size();
        groups += got_groups.size();
        contexts += got_contexts.size();
        trees += got_trees.size();
        rejected += want.rejected;
    }

    // Cyclic has-part input.
    auto kg = make_kg();
    const StatementSchema& has_part = kg->schemas().get_by_class(suc("HasPartStatementUnit"));
    mint_statement_unit(*kg, has_part, {ex("a"), {{"part", {ex("b")}}}});
    mint_statement_unit(*kg, has_part, {ex("b"), {{"part", {ex("c")}}}});
    mint_statement_unit(*kg, has_part, {ex("c"), {{"part", {ex("a")}}}});
    auto r = build_granularity_tree_units(*kg, {suc("HasPartStatementUnit"), "partonomy"});
    require(r.units.empty(), "cyclic has-part input produced a tree unit");
    require(r.diagnostics.size() == 1 && r.diagnostics[0].rfind("cycle:", 0) == 0, "cyclic input without a cycle diagnostic");

    require(trees > 0 && rejected > 0 && groups > 0, "generators never exercised trees, rejections or groups");
    return std::to_string(registries) + " registries: " + std::to_string(items) + " items, " + std::to_string(groups) +
           " item groups, " + std::to_string(contexts) + " contexts, " + std::to_string(trees) + " trees, " +
           std::to_string(rejected) + " rejected components; cycle diagnostic ok";
}

std::string zoom_consistency() {
    auto kg = make_kg();
    auto fx = load_scholarly(*kg);
    const auto& reg = kg->registry();
    const Iri store = kg->config().store_iri;

    require(level_of_target(*kg, store) == ZoomLevel::whole_graph, "store is not at the whole-graph level");
    require(level_of_target(*kg, fx.article) == ZoomLevel::item_groups, "article is not at the item-groups level");
    require(level_of_target(*kg, fx.tree) == ZoomLevel::items, "tree is not at the items level");
    for (const auto& m : reg.get(fx.article).members) {
        auto k = reg.get(m).kind;
        require(k == UnitKind::item || k == UnitKind::granularity_tree, "article member of unexpected kind");
    }
    for (const auto& g : reg.of_kind(UnitKind::item))
        require(level_of_target(*kg, g) == ZoomLevel::items, "item off the items level");
    for (const auto& g : reg.of_kind(UnitKind::statement))
        require(level_of_target(*kg, g) == ZoomLevel::statements, "statement off the statements level");

    std::vector<Iri> targets{store};
    for (const SemanticUnit* u : reg.all())
        if (u->kind != UnitKind::question) targets.push_back(u->gupri);
    std::size_t pairs = 0;
    const std::vector<ZoomLevel> unit_levels{ZoomLevel::statements, ZoomLevel::items, ZoomLevel::item_groups,
                                             ZoomLevel::whole_graph};
    for (std::size_t li = 0; li + 1 < unit_levels.size(); ++li) {
        ZoomLevel lower = unit_levels[li], upper = unit_levels[li + 1];
        for (const auto& x : targets) {
            if (level_of_target(*kg, x) != upper) continue;
            auto in = zoom(*kg, x, lower).units;
            std::set<Iri> in_set(in.begin(), in.end());
            for (const auto& y : targets) {
                if (level_of_target(*kg, y) != lower) continue;
                auto out = zoom(*kg, y, upper).units;
                bool x_in_out = std::find(out.begin(), out.end(), x) != out.end();
                require(in_set.count(y) == static_cast<std::size_t>(x_in_out),
                        "asymmetric zoom between " + x.str() + " and " + y.str());
                ++pairs;
            }
        }
    }
    // Triples level: a statement's triples lead back to it through their resources.
    for (const auto& g : reg.of_kind(UnitKind::statement)) {
        for (const auto& t : zoom(*kg, g, ZoomLevel::triples).triples) {
            auto out = zoom(*kg, t.subject, ZoomLevel::statements).units;
            require(std::find(out.begin(), out.end(), g) != out.end(), "triple does not zoom out to its statement");
            ++pairs;
        }
    }
    return std::to_string(targets.size()) + " targets, " + std::to_string(pairs) +
           " adjacent pairs checked; statement -> item/tree -> article -> graph";
}

std::string round_trips() {
    std::size_t nanopubs = 0, containers = 0, rdflib_checked = 0;
    nlohmann::json jobs = nlohmann::json::array();
    std::vector<std::size_t> expected_assertion;
    fs::path dir = scratch_dir("roundtrip");
    for (int s = 0; nanopubs < 200 || containers < 50; ++s) {
        require(s < 200, "generators did not yield enough units");
        StoreShape shape;
        shape.statements = 20;
        shape.negate = 0.25;
        shape.supersede = 0.15;
        auto store = random_store(40000 + s, shape, 3, s % 2 == 0);
        KnowledgeGraph& a = *store.kg;
        build_all(a, {});
        const auto& reg = a.registry();

        auto fresh = [&] {
            auto b = make_kg(s + 1, false);
            for (const auto& sc : store.schemas) b->schemas().add(sc);
            return b;
        };

        int taken = 0;
        for (const auto& g : reg.of_kind(UnitKind::statement)) {
            if (nanopubs >= 200 || taken++ >= 10) break;
            const SemanticUnit& u = reg.get(g);
            std::string trig = export_nanopub(a, g);
            auto b = fresh();
            import_nanopub(*b, trig);
            const SemanticUnit* v = b->registry().find(g);
            require(v != nullptr, "imported nanopub lost unit " + g.str());
            auto da = a.store().graph(*u.data_graph);
            auto db = b->store().graph(*v->data_graph);
            require(graph_isomorphic(da, db), "data graph not isomorphic for " + g.str());
            require(v->metadata == u.metadata, "metadata changed for " + g.str());
            require(v->category == u.category, "category changed for " + g.str());
            require(v->negated == u.negated, "negated flag changed for " + g.str());
            require(v->unit_class == u.unit_class, "class changed for " + g.str());
            if (nanopubs % 4 == 0) {
                fs::path file = dir / ("np" + std::to_string(nanopubs) + ".trig");
                std::ofstream(file) << trig;
                jobs.push_back({"trig", file.string()});
                expected_assertion.push_back(da.size());
            }
            ++nanopubs;
        }

        int compounds = 0;
        for (const SemanticUnit* u : reg.all()) {
            if (containers >= 50 || compounds >= 3) break;
            if (!is_compound(u->kind) || u->kind == UnitKind::question) continue;
            ++compounds;
            Archive archive = read_zip(write_zip(export_container(a, u->gupri, true)));
            auto b = fresh();
            import_container(*b, archive);
            require(b->registry().contains(u->gupri), "container import lost " + u->gupri.str());
            auto ma = reg.merged_data_graph(u->gupri);
            auto mb = b->registry().merged_data_graph(u->gupri);
            std::vector<Triple> va(ma.begin(), ma.end()), vb(mb.begin(), mb.end());
            require(graph_isomorphic(va, vb), "merged data graph not isomorphic for " + u->gupri.str());
            ++containers;
        }
    }

    require(python_oracle_available(), "python3 with rdflib is required for the TriG check");
    auto results = run_rdf_oracle(jobs);
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        require(!r.contains("error"), "rdflib rejected TriG: " + r.value("error", std::string()));
        require(r["graphs"].size() == 4, "rdflib saw " + std::to_string(r["graphs"].size()) + " graphs");
        bool assertion_found = false;
        for (const auto& [g, n] : r["graphs"].items())
            assertion_found = assertion_found || n.get<std::size_t>() == expected_assertion[i];
        require(assertion_found, "no graph with the assertion's triple count");
        ++rdflib_checked;
    }
    fs::remove_all(dir);
    return std::to_string(nanopubs) + " nanopubs, " + std::to_string(containers) + " containers (zip), " +
           std::to_string(rdflib_checked) + " TriG files parsed by rdflib";
}

std::string profiling_oracle() {
    constexpr int registries = 100;
    std::size_t facet_checks = 0, hotspot_checks = 0;
    for (int i = 0; i < registries; ++i) {
        StoreShape shape;
        shape.statements = 20;
        shape.max_age_days = 500;
        auto store = random_store(60000 + i, shape, 4);
        KnowledgeGraph& kg = *store.kg;
        const std::string where = "registry " + std::to_string(i);
        const std::size_t top = 3 + static_cast<std::size_t>(i % 5);
        require_empty(check_profile(kg, profile(kg, top), top), where);

        auto active = active_statement_units(kg.registry());
        require_empty(check_facets(kg, active, facet_options(kg, active)), where + " facets");
        std::vector<Iri> everything;
        for (const SemanticUnit* u : kg.registry().all()) everything.push_back(u->gupri);
        require_empty(check_facets(kg, everything, facet_options(kg, everything)), where + " facets (all units)");

        // Filters commute and each one matches a recount.
        Rng rng(70000 + i);
        std::vector<FacetFilter> filters{
            {.kind = FacetFilter::Kind::negated, .flag = chance(rng, 0.5)},
            {.kind = FacetFilter::Kind::created_within, .bucket = chance(rng, 0.5) ? TimeBucket::days30 : TimeBucket::days365},
            {.kind = FacetFilter::Kind::unit_class, .iri = store.schemas[pick(rng, store.schemas.size())].unit_class}};
        auto ab = apply_facets(kg, active, filters);
        std::vector<FacetFilter> rev(filters.rbegin(), filters.rend());
        auto ba = apply_facets(kg, active, rev);
        require(std::set<Iri>(ab.begin(), ab.end()) == std::set<Iri>(ba.begin(), ba.end()), where + ": filters do not commute");
        std::size_t expect = 0;
        for (const auto& g : active) {
            const auto& u = kg.registry().get(g);
            bool recent = kg.now() - u.metadata.created <= *bucket_span(filters[1].bucket);
            if (u.negated == filters[0].flag && recent && u.unit_class == *filters[2].iri) ++expect;
        }
        require(ab.size() == expect, where + ": filtered count differs from recount");
        ++facet_checks;

        for (auto w : {std::optional<std::chrono::seconds>(std::chrono::days(7)),
                       std::optional<std::chrono::seconds>(std::chrono::days(90)), std::optional<std::chrono::seconds>()}) {
            require_empty(check_hotspots(kg, w, hotspots(kg, w)), where + " hotspots");
            ++hotspot_checks;
        }
    }
    return std::to_string(registries) + " registries: profile, " + std::to_string(facet_checks * 3) +
           " facet checks, " + std::to_string(hotspot_checks) + " hotspot rankings";
}

std::string unit_model_checklist() {
    auto kg = make_kg();
    auto fx = load_scholarly(*kg);
    auto& reg = kg->registry();
    const Iri& layer = reg.layer_graph();

    // Identifier and class for every unit, mirrored in the layer.
    for (const SemanticUnit* u : reg.all()) {
        require(!u->gupri.str().empty() && !u->unit_class.str().empty(), "unit without GUPRI or class");
        require(kg->store().contains(Quad{{u->gupri, vocab::instance_of, u->unit_class}, layer}),
                "layer lacks the class of " + u->gupri.str());
    }
    // Every data triple belongs to a statement unit.
    std::set<Iri> data_graphs;
    for (const auto& g : reg.of_kind(UnitKind::statement)) data_graphs.insert(*reg.get(g).data_graph);
    for (const auto& q : kg->store().quads())
        if (q.graph != layer) require(data_graphs.count(q.graph) > 0, "data triple outside statement units");

    // Negation is a unit-level flag.
    const StatementSchema& has_part = kg->schemas().get_by_class(suc("HasPartStatementUnit"));
    SemanticUnit neg = mint_statement_unit(*kg, has_part, {ex("head-s"), {{"part", {ex("leg-s")}}}}, {.negated = true});
    require(kg->store().contains(Quad{{neg.gupri, vocab::instance_of, vocab::negation_unit}, layer}),
            "negation not recorded in the layer");
    for (const auto& t : kg->store().graph(*neg.data_graph))
        require(t.predicate == has_part.slots[0].path[0], "negated data graph carries extra vocabulary");

    // Compound kinds exist and are layered.
    auto stmts = reg.of_kind(UnitKind::statement);
    make_logical_argument_unit(*kg, {stmts[0], stmts[1], stmts[2]}, InferenceKind::deduction);
    make_dataset_unit(*kg, {item_of(*kg, ex("head-s")), item_of(*kg, ex("thorax-s"))});
    for (UnitKind k : {UnitKind::item, UnitKind::item_group, UnitKind::granularity_tree, UnitKind::granular_item_group,
                       UnitKind::context, UnitKind::standard_information, UnitKind::logical_argument, UnitKind::dataset}) {
        auto units = reg.of_kind(k);
        require(!units.empty(), "no " + std::string(to_string(k)) + " unit");
        for (const auto& g : units) {
            require(kg->store().exists({.subject = g, .predicate = vocab::has_member, .graph = layer}),
                    std::string(to_string(k)) + " unit without layer membership");
            for (const auto& m : reg.get(g).members) require(reg.contains(m), "dangling member");
        }
    }

    // Zooming from the article reaches its statements.
    auto down = zoom(*kg, fx.article, ZoomLevel::statements).units;
    auto closure = reg.statement_closure(fx.article);
    require(std::set<Iri>(down.begin(), down.end()) == closure, "zoom-in from the article misses statements");

    // A question posed as a template, no query text written.
    Question q{"R0 of the population", {QuestionPart{suc("BasicReproductionNumberStatementUnit")}}};
    q.parts[0].subject = FixedValue{ex("population-1")};
    q.parts[0].slots["value"] = LiteralVariable{"r0"};
    SemanticUnit qu = register_question(*kg, q);
    ResultSet rs = execute(compile(question_of_unit(qu), kg->schemas(), layer), *kg);
    require(rs.rows.size() == 2, "question returned " + std::to_string(rs.rows.size()) + " rows");
    return "identity, statement coverage, negation flag, 8 compound kinds, zoom-in, template question hold on the scholarly fixture";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
        {"partition-law", partition_law},
        {"weight-statement", weight_statement},
        {"dynamic-label-template", travel_label},
        {"weight-question", weight_question},
        {"query-oracle-equivalence", query_oracle},
        {"negated-statement", negated_statement},
        {"compound-laws", compound_laws},
        {"zoom-consistency", zoom_consistency},
        {"round-trips", round_trips},
        {"profiling-oracle", profiling_oracle},
        {"unit-model-checklist", unit_model_checklist},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        std::string line;
        try {
            line = "PASS " + name + ": " + run();
        } catch (const Failure& f) {
            line = "FAIL " + name + ": " + f.reason;
            ++failed;
        } catch (const std::exception& e) {
            line = "FAIL " + name + ": exception: " + e.what();
            ++failed;
        }
        std::cout << line << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
