#include <gtest/gtest.h>

#include <regex>

#include "fixtures.hpp"
#include "generators.hpp"
#include "semunit/error.hpp"
#include "semunit/vocab.hpp"

using namespace semunit;
using namespace semunit::testing;

namespace {

SemanticUnit compound(const Iri& g, UnitKind kind, std::vector<Iri> members, Timestamp t) {
    UnitMetadata md{vocab::default_creator, t, std::nullopt, t, std::nullopt, vocab::default_license};
    return SemanticUnit{.gupri = g, .unit_class = unit_kind_class(kind), .kind = kind, .members = std::move(members),
                        .metadata = md};
}

// Registry contents compared unit by unit.
void expect_same_units(const UnitRegistry& a, const UnitRegistry& b) {
    auto ua = a.all(), ub = b.all();
    ASSERT_EQ(ua.size(), ub.size());
    for (std::size_t i = 0; i < ua.size(); ++i) EXPECT_EQ(*ua[i], *ub[i]) << ua[i]->gupri.str();
    EXPECT_EQ(a.declared_kinds(), b.declared_kinds());
}

}  // namespace

TEST(UnitVocabulary, StringsRoundTrip) {
    for (auto k : {UnitKind::statement, UnitKind::item, UnitKind::item_group, UnitKind::granularity_tree,
                   UnitKind::granular_item_group, UnitKind::context, UnitKind::standard_information,
                   UnitKind::logical_argument, UnitKind::dataset, UnitKind::question})
        EXPECT_EQ(parse_unit_kind(to_string(k)), k);
    for (auto k : {ResourceKind::named_individual, ResourceKind::some_instance, ResourceKind::most_instances,
                   ResourceKind::every_instance, ResourceKind::ontology_class, ResourceKind::semantic_unit,
                   ResourceKind::relation}) {
        EXPECT_EQ(parse_resource_kind(to_string(k)), k);
        EXPECT_EQ(resource_kind_from_class(resource_kind_class(k)), k);
    }
    EXPECT_THROW(parse_unit_kind("sentence"), Error);
}

TEST(UnitVocabulary, CategoryFollowsSubjectKind) {
    EXPECT_EQ(classify(ResourceKind::named_individual, false), StatementCategory::assertional);
    EXPECT_EQ(classify(ResourceKind::some_instance, false), StatementCategory::contingent);
    EXPECT_EQ(classify(ResourceKind::most_instances, false), StatementCategory::prototypical);
    EXPECT_EQ(classify(ResourceKind::every_instance, false), StatementCategory::universal);
    EXPECT_EQ(classify(ResourceKind::ontology_class, false), StatementCategory::universal);
    EXPECT_EQ(classify(ResourceKind::named_individual, true), StatementCategory::lexical);
}

TEST(UnitVocabulary, Rfc3339) {
    auto t = parse_rfc3339("2026-03-02T09:00:00Z");
    EXPECT_EQ(format_rfc3339(t), "2026-03-02T09:00:00Z");
    EXPECT_EQ(parse_rfc3339("2026-03-02T10:00:00.250+01:00"), t);
    EXPECT_THROW(parse_rfc3339("yesterday"), Error);
}

TEST(GupriMinter, SeededAndDerived) {
    GupriMinter a(42), b(42), c(43);
    auto x = a.mint();
    EXPECT_EQ(x, b.mint());
    EXPECT_NE(x, c.mint());
    EXPECT_TRUE(std::regex_match(x.str(), std::regex("urn:uuid:[0-9a-f]{8}-[0-9a-f]{4}-4[0-9a-f]{3}-[89ab][0-9a-f]{3}-[0-9a-f]{12}")));
    EXPECT_EQ(a.derive("item\nx"), c.derive("item\nx"));
    EXPECT_NE(a.derive("item\nx"), a.derive("item\ny"));
    EXPECT_TRUE(std::regex_match(a.derive("k").str(), std::regex("urn:uuid:[0-9a-f]{8}-[0-9a-f]{4}-5.*")));
}

TEST(UnitRegistry, StatementUnitsAreMirroredInTheLayer) {
    auto kg = make_kg();
    load_orchard(*kg);
    const auto& reg = kg->registry();
    for (const SemanticUnit* u : reg.all()) {
        EXPECT_TRUE(kg->store().contains(Quad{{u->gupri, vocab::instance_of, u->unit_class}, reg.layer_graph()}));
        EXPECT_TRUE(kg->store().contains(
            Quad{{u->gupri, vocab::has_data_graph, *u->data_graph}, reg.layer_graph()}));
    }
}

TEST(UnitRegistry, RebuildFromLayerIsLossless) {
    auto store = random_store(3, {.statements = 30, .negate = 0.3, .supersede = 0.2}, 4, true);
    KnowledgeGraph& kg = *store.kg;
    build_all(kg, {});
    auto snapshot = kg.registry().all();
    std::vector<SemanticUnit> before;
    for (auto* u : snapshot) before.push_back(*u);
    auto kinds = kg.registry().declared_kinds();
    kg.registry().rebuild_from_layer();
    auto after = kg.registry().all();
    ASSERT_EQ(after.size(), before.size());
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(*after[i], before[i]);
    EXPECT_EQ(kg.registry().declared_kinds(), kinds);
}

TEST(UnitRegistry, RejectsBrokenShapes) {
    auto kg = make_kg();
    auto& reg = kg->registry();
    const auto t = fixture_time();
    EXPECT_THROW(reg.register_unit(compound(ex("c"), UnitKind::item_group, {}, t)), Error);
    EXPECT_THROW(reg.register_unit(compound(ex("c"), UnitKind::item_group, {ex("missing")}, t)), Error);
    try {
        reg.register_unit(compound(ex("c"), UnitKind::item_group, {ex("missing")}, t));
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::integrity);
    }

    load_orchard(*kg);
    auto s = reg.of_kind(UnitKind::statement);
    reg.register_unit(compound(ex("c1"), UnitKind::dataset, {s[0], s[1]}, t));
    try {
        reg.register_unit(compound(ex("c1"), UnitKind::dataset, {s[0]}, t));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::conflict);
    }
    // Removing a contained unit breaks its container.
    try {
        reg.remove_unit(s[0]);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::integrity);
    }
    reg.register_unit(compound(ex("c2"), UnitKind::dataset, {ex("c1")}, t));
    EXPECT_THROW(reg.replace_members(ex("c1"), {ex("c2")}, t), Error);  // cycle
    EXPECT_EQ(reg.member_closure(ex("c2")), (std::set<Iri>{ex("c1"), s[0], s[1]}));
    EXPECT_EQ(reg.statement_closure(ex("c2")), (std::set<Iri>{s[0], s[1]}));
    EXPECT_EQ(reg.containers_of(s[0]), std::vector<Iri>{ex("c1")});
    reg.remove_unit(ex("c2"));
    EXPECT_FALSE(kg->store().exists({.subject = ex("c2"), .graph = reg.layer_graph()}));
}

TEST(UnitRegistry, KindsAndSupersession) {
    auto kg = make_kg();
    auto fx = load_anatomy(*kg);
    auto& reg = kg->registry();
    EXPECT_EQ(reg.kind_of(ex("some-antenna")), ResourceKind::some_instance);
    EXPECT_EQ(reg.kind_of(ex("nobody")), ResourceKind::named_individual);
    EXPECT_EQ(reg.kind_of(fx.negated_unit), ResourceKind::semantic_unit);

    Iri positive = statement_of(*kg, suc("HasPartStatementUnit"), ex("body-x"));
    EXPECT_FALSE(reg.superseded(positive));
    SemanticUnit neg = negate_statement_unit(*kg, positive);
    EXPECT_TRUE(reg.superseded(positive));
    EXPECT_EQ(neg.revises, positive);
    EXPECT_TRUE(neg.negated);
    EXPECT_THROW(negate_statement_unit(*kg, positive), Error);
    EXPECT_THROW(negate_statement_unit(*kg, neg.gupri), Error);
}

TEST(UnitRegistry, MentionIndexes) {
    auto kg = make_kg();
    load_orchard(*kg);
    const auto& reg = kg->registry();
    auto mentioning = reg.statements_mentioning(obo("UO:0000021"));
    // Three weight statements plus the gram's own type and label statements.
    EXPECT_EQ(mentioning.size(), 5u);
    auto containing = reg.units_containing(ex("apple-X"));
    EXPECT_EQ(containing[UnitKind::statement].size(), 3u);  // type, label, weight
}

TEST(KnowledgeGraph, LogReplayRestoresStore) {
    auto dir = scratch_dir("log");
    std::vector<SemanticUnit> before;
    std::size_t quads = 0;
    {
        auto kg = make_kg();
        kg->open_log(dir / "log.nq");
        load_orchard(*kg);
        load_anatomy(*kg);
        negate_statement_unit(*kg, statement_of(*kg, suc("HasPartStatementUnit"), ex("body-x")));
        build_all(*kg, {});
        kg->registry().remove_unit(kg->registry().of_kind(UnitKind::context).front());
        kg->flush();
        for (auto* u : kg->registry().all()) before.push_back(*u);
        quads = kg->store().size();
    }
    auto kg = make_kg();
    kg->open_log(dir / "log.nq");
    EXPECT_EQ(kg->store().size(), quads);
    auto after = kg->registry().all();
    ASSERT_EQ(after.size(), before.size());
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(*after[i], before[i]);
    std::filesystem::remove_all(dir);
}

TEST(KnowledgeGraph, MintedGupriesAvoidExistingNames) {
    auto kg = make_kg(1);
    GupriMinter probe(1);
    Iri first = probe.mint();
    kg->store().insert(Triple{first, vocab::rdfs_label, Literal("taken")}, ex("g"));
    EXPECT_NE(kg->mint_gupri(), first);
}
