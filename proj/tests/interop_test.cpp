#include <gtest/gtest.h>

#include <fstream>

#include "fixtures.hpp"
#include "semunit/error.hpp"
#include "semunit/interop.hpp"
#include "semunit/rdf_io.hpp"
#include "semunit/render.hpp"
#include "semunit/vocab.hpp"

using namespace semunit;
using namespace semunit::testing;
namespace fs = std::filesystem;

namespace {

std::vector<Iri> graph_order(const std::string& trig) {
    std::vector<Iri> out;
    for (const auto& q : parse_rdf(trig, RdfSyntax::trig, Iri("urn:default")))
        if (out.empty() || out.back() != q.graph) out.push_back(q.graph);
    return out;
}

}  // namespace

TEST(Nanopub, WeightStatementRoundTrip) {
    auto a = make_kg(1);
    load_orchard(*a);
    Iri w = statement_of(*a, suc("WeightStatementUnit"), ex("apple-X"));
    const SemanticUnit& u = a->registry().get(w);
    std::string trig = export_nanopub(*a, w);

    auto graphs = graph_order(trig);
    ASSERT_EQ(graphs.size(), 4u);
    EXPECT_EQ(graphs[1], *u.data_graph);
    EXPECT_NE(trig.find("Apple X has a weight of 204.56 grams"), std::string::npos);

    auto b = make_kg(2);
    ImportResult r = import_nanopub(*b, trig);
    EXPECT_TRUE(r.warnings.empty());
    ASSERT_EQ(r.units, std::vector<Iri>{w});
    EXPECT_EQ(b->registry().get(w), u);
    auto ga = a->store().graph(*u.data_graph), gb = b->store().graph(*u.data_graph);
    EXPECT_EQ(std::set<Triple>(ga.begin(), ga.end()), std::set<Triple>(gb.begin(), gb.end()));
    // Type and label annotations came along, so the label renders in the new store.
    EXPECT_EQ(render_unit_label(b->registry(), b->schemas(), w), "Apple X has a weight of 204.56 grams");

    // A second import keeps the existing unit.
    ImportResult again = import_nanopub(*b, trig);
    ASSERT_EQ(again.warnings.size(), 1u);
    EXPECT_NE(again.warnings[0].find("already present"), std::string::npos);
}

TEST(Nanopub, NegatedUnitFlagInPubinfo) {
    auto a = make_kg();
    auto fx = load_anatomy(*a);
    std::string trig = export_nanopub(*a, fx.negated_unit);
    auto quads = parse_rdf(trig, RdfSyntax::trig, Iri("urn:default"));
    auto graphs = graph_order(trig);
    bool flagged = false;
    for (const auto& q : quads)
        if (q.graph == graphs[3] && q.triple.subject == Iri(fx.negated_unit.str() + "#nanopub") &&
            q.triple.predicate == vocab::is_negated)
            flagged = q.triple.object == Term(Literal("true", vocab::xsd("boolean")));
    EXPECT_TRUE(flagged) << trig;

    auto b = make_kg();
    import_nanopub(*b, trig);
    EXPECT_TRUE(b->registry().get(fx.negated_unit).negated);
}

TEST(Nanopub, UnknownSchemaAndRevisionTargetWarn) {
    auto a = make_kg();
    load_anatomy(*a);
    Iri positive = statement_of(*a, suc("HasPartStatementUnit"), ex("body-x"));
    SemanticUnit neg = negate_statement_unit(*a, positive);
    std::string trig = export_nanopub(*a, neg.gupri);

    auto b = make_kg(7, false);  // no schemas
    ImportResult r = import_nanopub(*b, trig);
    ASSERT_EQ(r.warnings.size(), 2u);
    EXPECT_NE(r.warnings[0].find("unknown schema"), std::string::npos);
    EXPECT_NE(r.warnings[1].find("link dropped"), std::string::npos);
    const SemanticUnit& got = b->registry().get(neg.gupri);
    EXPECT_FALSE(got.schema_ref.has_value());
    EXPECT_FALSE(got.revises.has_value());
    EXPECT_TRUE(got.negated);
}

TEST(Nanopub, MalformedInput) {
    auto kg = make_kg();
    EXPECT_THROW(import_nanopub(*kg, "<urn:a> <urn:b> ."), Error);
    EXPECT_THROW(import_nanopub(*kg, "<urn:g> { <urn:a> <urn:b> <urn:c> . }"), Error);
    EXPECT_THROW(export_nanopub(*kg, ex("nothing")), Error);
}

TEST(Container, ScholarlyArticleRoundTrip) {
    auto a = make_kg();
    auto fx = load_scholarly(*a);
    Archive archive = export_container(*a, fx.article, true);
    ASSERT_TRUE(archive.count("manifest.yaml"));
    std::size_t nanopubs = 0, manifests = 0;
    for (const auto& [path, _] : archive) {
        nanopubs += path.starts_with("nanopubs/");
        manifests += path.starts_with("manifests/");
    }
    EXPECT_EQ(manifests, 5u);  // four items and the tree
    EXPECT_GT(nanopubs, 4u);

    auto b = make_kg(99);
    ImportResult r = import_container(*b, read_zip(write_zip(archive)));
    EXPECT_TRUE(r.warnings.empty()) << r.warnings.front();
    const auto& ra = a->registry();
    const auto& rb = b->registry();
    for (const auto& g : ra.member_closure(fx.article)) {
        ASSERT_TRUE(rb.contains(g)) << g.str();
        EXPECT_EQ(rb.get(g), ra.get(g));
    }
    EXPECT_EQ(rb.get(fx.article), ra.get(fx.article));
}

TEST(Container, FlatExportReferencesCompounds) {
    auto a = make_kg();
    auto fx = load_scholarly(*a);
    Archive flat = export_container(*a, fx.article, false);
    for (const auto& [path, _] : flat) EXPECT_FALSE(path.starts_with("manifests/")) << path;
    EXPECT_NE(flat.at("manifest.yaml").find(fx.tree.str()), std::string::npos);

    // The referenced compounds are missing from an empty store.
    auto b = make_kg();
    EXPECT_THROW(import_container(*b, flat), Error);
    // In a store that already holds them the import succeeds.
    auto c = make_kg();
    load_scholarly(*c);
    c->registry().remove_unit(fx.article);
    ImportResult r = import_container(*c, flat);
    EXPECT_EQ(r.units, std::vector<Iri>{fx.article});
    EXPECT_TRUE(r.warnings.empty());
}

TEST(Zip, RoundTripAndCorruption) {
    Archive in{{"manifest.yaml", "gupri: x\n"}, {"nanopubs/a.trig", std::string(5000, 'a')}, {"empty", ""}};
    in["binary"] = std::string("\0\1\2\xff", 4);
    std::string bytes = write_zip(in);
    EXPECT_EQ(bytes.substr(0, 4), std::string("PK\3\4", 4));
    EXPECT_EQ(read_zip(bytes), in);
    EXPECT_LT(bytes.size(), 5000u);  // deflated
    EXPECT_THROW(read_zip("not a zip"), Error);
    std::string broken = bytes;
    broken[broken.size() / 2] ^= 0x55;
    EXPECT_THROW(read_zip(broken), Error);
}

TEST(Zip, InteroperatesWithPythonZipfile) {
    if (!python_oracle_available()) GTEST_SKIP() << "python3 not available";
    auto dir = scratch_dir("zip");
    Archive in{{"manifest.yaml", "gupri: x\n"}, {"nanopubs/b.trig", std::string(3000, 'b') + "\n"}};
    { std::ofstream(dir / "ours.zip", std::ios::binary) << write_zip(in); }
    std::string py = std::string(SEMUNIT_PYTHON) + " -c \"import zipfile,sys,json;"
                     "z=zipfile.ZipFile(sys.argv[1]);assert z.testzip() is None;"
                     "print(json.dumps({n: len(z.read(n)) for n in z.namelist()}));"
                     "w=zipfile.ZipFile(sys.argv[2],'w',zipfile.ZIP_DEFLATED);"
                     "w.writestr('manifest.yaml','gupri: y\\n');w.writestr('d/e.txt','e'*4000);w.close()\" " +
                     (dir / "ours.zip").string() + " " + (dir / "theirs.zip").string();
    auto res = run_command(py);
    ASSERT_EQ(res.exit_code, 0) << res.output;
    auto sizes = nlohmann::json::parse(res.output);
    EXPECT_EQ(sizes["manifest.yaml"], 9);
    EXPECT_EQ(sizes["nanopubs/b.trig"], 3001);
    Archive theirs = read_zip(read_text(dir / "theirs.zip"));
    EXPECT_EQ(theirs.at("manifest.yaml"), "gupri: y\n");
    EXPECT_EQ(theirs.at("d/e.txt"), std::string(4000, 'e'));
    fs::remove_all(dir);
}

TEST(RawRdf, TurtleIngestAndNquadsExport) {
    auto dir = scratch_dir("ttl");
    {
        std::ofstream(dir / "apples.ttl") << "@prefix ex: <https://example.org/kg/> .\n"
                                             "@prefix obo: <http://purl.obolibrary.org/obo/> .\n"
                                             "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
                                             "ex:apple-W rdfs:label \"Apple W\" ;\n"
                                             "  obo:RO_0000086 [ obo:OBI_0001938 [\n"
                                             "      obo:OBI_0002135 \"99.5\"^^<http://www.w3.org/2001/XMLSchema#decimal> ;\n"
                                             "      obo:IAO_0000039 obo:UO_0000021 ] ] .\n"
                                             "obo:UO_0000021 a obo:UO_0000002 .\n";
        std::ofstream(dir / "bad.xml") << "<rdf/>";
    }
    auto kg = make_kg();
    PartitionReport r = ingest_rdf(*kg, dir / "apples.ttl");
    EXPECT_EQ(r.triples_total, 6u);
    EXPECT_EQ(r.units_created.at(suc("WeightStatementUnit")), 1u);
    EXPECT_EQ(render_unit_label(kg->registry(), kg->schemas(),
                                statement_of(*kg, suc("WeightStatementUnit"), ex("apple-W"))),
              "Apple W has a weight of 99.5 UO_0000021");
    EXPECT_THROW(ingest_rdf(*kg, dir / "bad.xml"), Error);
    EXPECT_THROW(ingest_rdf(*kg, dir / "missing.nt"), Error);

    std::string nq = export_nquads(*kg);
    auto quads = parse_rdf(nq, RdfSyntax::nquads, Iri("urn:default"));
    EXPECT_EQ(quads.size(), kg->store().size());
    EXPECT_TRUE(std::is_sorted(quads.begin(), quads.end()));
    fs::remove_all(dir);
}
