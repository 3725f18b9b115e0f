#include "fixtures.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sys/wait.h>
#include <sstream>

#include "semunit/error.hpp"
#include "semunit/interop.hpp"
#include "semunit/schema.hpp"
#include "semunit/unit.hpp"
#include "semunit/vocab.hpp"

namespace semunit {
void PrintTo(const Iri& iri, std::ostream* os) { *os << "<" << iri.str() << ">"; }
}  // namespace semunit

namespace semunit::testing {

namespace fs = std::filesystem;

fs::path data_dir() { return SEMUNIT_TEST_DATA_DIR; }

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::not_found, "cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json read_json(const fs::path& path) { return nlohmann::json::parse(read_text(path)); }

Timestamp fixture_time() { return parse_rfc3339("2026-03-02T09:00:00Z"); }

std::unique_ptr<KnowledgeGraph> make_kg(std::uint64_t seed, bool with_schemas) {
    GraphConfig config;
    config.seed = seed;
    auto kg = std::make_unique<KnowledgeGraph>(config);
    kg->set_clock([] { return fixture_time(); });
    if (with_schemas)
        for (auto& s : load_schema_dir(data_dir() / "schemas")) kg->schemas().add(std::move(s));
    return kg;
}

BuildConfig fixture_build_config() { return load_build_config(data_dir() / "build.yaml"); }

Iri ex(const std::string& local) { return Iri("https://example.org/kg/" + local); }
Iri obo(const std::string& curie) { return vocab::expand(curie); }
Iri suc(const std::string& local) { return Iri("https://w3id.org/semunit/classes#" + local); }

PartitionReport load_orchard(KnowledgeGraph& kg) { return ingest_rdf(kg, data_dir() / "fixtures" / "orchard.nt"); }

AnatomyFixture load_anatomy(KnowledgeGraph& kg) {
    AnatomyFixture f{ingest_rdf(kg, data_dir() / "fixtures" / "anatomy.nt"), Iri("urn:unset")};
    auto form = read_json(data_dir() / "fixtures" / "anatomy_negation.json");
    const StatementSchema& schema = kg.schemas().get_by_class(vocab::expand(form["schema"].get<std::string>()));
    SlotBindings b{vocab::expand(form["subject"].get<std::string>()), {}};
    for (const auto& [slot, value] : form["slots"].items()) b.values[slot] = {vocab::expand(value.get<std::string>())};
    f.negated_unit = mint_statement_unit(kg, schema, b, {.negated = form.value("negated", false)}).gupri;
    return f;
}

ScholarlyFixture load_scholarly(KnowledgeGraph& kg) {
    ingest_rdf(kg, data_dir() / "fixtures" / "scholarly.nt");
    const StatementSchema& r0 = kg.schemas().get_by_class(suc("BasicReproductionNumberStatementUnit"));
    SlotBindings b{ex("population-1"), {{"value", {Literal("3.1", vocab::xsd_decimal)}}}};
    ScholarlyFixture f{Iri("urn:unset"), Iri("urn:unset"), mint_statement_unit(kg, r0, b).gupri};

    BuildConfig config = fixture_build_config();
    auto built = build_all(kg, config);
    const auto& trees = built.at(UnitKind::granularity_tree).units;
    if (trees.size() != 1) throw Error(ErrorCode::integrity, "scholarly fixture expects one granularity tree");
    f.tree = trees.front();

    std::vector<Iri> members;
    for (const char* r : {"specimen-s", "head-s", "thorax-s", "antenna-s"}) members.push_back(item_of(kg, ex(r)));
    members.push_back(f.tree);
    f.article = make_standard_information_unit(kg, config.standard_information.front(), members).gupri;
    return f;
}

Iri item_of(const KnowledgeGraph& kg, const Iri& subject) {
    for (const auto& g : kg.registry().with_subject(subject))
        if (kg.registry().get(g).kind == UnitKind::item) return g;
    throw Error(ErrorCode::not_found, "no item unit for " + subject.str());
}

Iri statement_of(const KnowledgeGraph& kg, const Iri& unit_class, const Iri& subject) {
    for (const auto& g : kg.registry().with_subject(subject)) {
        const SemanticUnit& u = kg.registry().get(g);
        if (u.kind == UnitKind::statement && u.unit_class == unit_class) return g;
    }
    throw Error(ErrorCode::not_found, "no " + unit_class.str() + " unit for " + subject.str());
}

fs::path scratch_dir(const std::string& name) {
    static std::mt19937_64 rng{std::random_device{}()};
    fs::path dir = fs::temp_directory_path() / ("semunit-" + name + "-" + std::to_string(rng() % 1000000000));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

CommandResult run_command(const std::string& command) {
    CommandResult r;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool python_oracle_available() {
    static const bool ok = [] {
        std::string py = SEMUNIT_PYTHON;
        return !py.empty() && run_command("'" + py + "' -c 'import rdflib' 2>/dev/null").exit_code == 0;
    }();
    return ok;
}

nlohmann::json run_rdf_oracle(const nlohmann::json& jobs) {
    fs::path dir = scratch_dir("oracle");
    {
        std::ofstream out(dir / "jobs.json");
        out << jobs.dump();
    }
    std::string cmd = std::string("'") + SEMUNIT_PYTHON + "' '" + SEMUNIT_SOURCE_DIR + "/tools/rdf_oracle.py' batch '" +
                      (dir / "jobs.json").string() + "'";
    auto r = run_command(cmd);
    fs::remove_all(dir);
    if (r.exit_code != 0) throw Error(ErrorCode::integrity, "rdf oracle failed: " + r.output);
    return nlohmann::json::parse(r.output);
}

}  // namespace semunit::testing
