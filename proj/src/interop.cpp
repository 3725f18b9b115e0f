#include "semunit/interop.hpp"

#include <yaml-cpp/yaml.h>
#include <zlib.h>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "semunit/error.hpp"
#include "semunit/rdf_io.hpp"
#include "semunit/registry.hpp"
#include "semunit/render.hpp"
#include "semunit/validate.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

namespace {

Iri suffixed(const Iri& gupri, std::string_view suffix) { return Iri(gupri.str() + "#" + std::string(suffix)); }

bool is_annotation_predicate(const Iri& p) {
    return p == vocab::instance_of || p == vocab::rdfs_label || p == vocab::skos_pref_label;
}

struct ParsedNanopub {
    SemanticUnit unit;
    std::vector<Triple> data;
    std::vector<std::pair<Iri, ResourceKind>> kinds;
    std::vector<Triple> annotations;
};

ParsedNanopub parse_nanopub(std::string_view trig) {
    const Iri dflt("urn:semunit:default");
    std::map<Iri, std::vector<Triple>> graphs;
    for (auto& q : parse_rdf(trig, RdfSyntax::trig, dflt)) graphs[q.graph].push_back(std::move(q.triple));
    if (graphs.count(dflt)) throw Error(ErrorCode::format, "nanopub has triples outside named graphs");
    if (graphs.size() != 4)
        throw Error(ErrorCode::format, "nanopub needs 4 named graphs, found " + std::to_string(graphs.size()));

    std::optional<Iri> np, assertion, provenance, pubinfo;
    for (const auto& [g, triples] : graphs) {
        for (const auto& t : triples) {
            if (t.predicate == vocab::instance_of && t.object == Term(vocab::np_nanopublication)) np = t.subject;
        }
        if (!np) continue;
        for (const auto& t : triples) {
            if (t.subject != *np || !t.object.is_resource()) continue;
            if (t.predicate == vocab::np_has_assertion) assertion = t.object.resource();
            if (t.predicate == vocab::np_has_provenance) provenance = t.object.resource();
            if (t.predicate == vocab::np_has_publication_info) pubinfo = t.object.resource();
        }
        break;
    }
    if (!np) throw Error(ErrorCode::format, "nanopub head graph not found");
    for (const auto* part : {&assertion, &provenance, &pubinfo})
        if (!*part || !graphs.count(**part)) throw Error(ErrorCode::format, "nanopub head misses a part graph");

    std::vector<std::pair<Iri, ResourceKind>> kinds;
    std::vector<Triple> annotations;
    std::optional<Iri> gupri;
    for (const auto& t : graphs[*pubinfo])
        if (t.predicate == vocab::has_data_graph && t.object == Term(*assertion)) gupri = t.subject;
    if (!gupri) throw Error(ErrorCode::format, "pubinfo does not describe the assertion graph");

    std::vector<Triple> description;
    for (const auto& t : graphs[*pubinfo]) {
        if (t.predicate == vocab::resource_kind) {
            const Iri* cls = t.object.as_resource();
            auto kind = cls ? resource_kind_from_class(*cls) : std::nullopt;
            if (!kind) throw Error(ErrorCode::format, "unknown resource kind for <" + t.subject.str() + ">");
            kinds.emplace_back(t.subject, *kind);
        } else if (t.subject == *gupri) {
            description.push_back(t);
        } else if (t.subject != *np) {
            annotations.push_back(t);
        }
    }
    ParsedNanopub out{unit_from_description(*gupri, description), graphs[*assertion], std::move(kinds),
                      std::move(annotations)};
    if (out.unit.kind != UnitKind::statement)
        throw Error(ErrorCode::format, "nanopub " + np->str() + " does not describe a statement unit");
    return out;
}

// Registers a batch of parsed statement units. Everything is checked before the
// first write.
void import_statements(KnowledgeGraph& kg, std::vector<ParsedNanopub>& batch, ImportResult& result) {
    auto& reg = kg.registry();
    auto& store = kg.store();
    const Iri& layer = reg.layer_graph();

    std::vector<ParsedNanopub*> fresh;
    std::set<Iri> batch_units;
    for (auto& np : batch) {
        const Iri& g = np.unit.gupri;
        if (reg.contains(g) || batch_units.count(g)) {
            result.warnings.push_back("unit " + g.str() + " already present; kept existing");
            continue;
        }
        if (store.has_graph(*np.unit.data_graph))
            throw Error(ErrorCode::conflict, "graph " + np.unit.data_graph->str() + " already exists");
        batch_units.insert(g);
        fresh.push_back(&np);
    }

    std::map<Iri, ResourceKind> kinds;
    std::set<std::pair<Iri, Iri>> extra_types;
    for (auto* np : fresh) {
        for (const auto& [r, k] : np->kinds) {
            auto declared = reg.declared_kinds().find(r);
            if (declared != reg.declared_kinds().end() && declared->second != k)
                throw Error(ErrorCode::conflict, "resource " + r.str() + " already declared as " +
                                                     std::string(to_string(declared->second)));
            if (auto [it, ok] = kinds.emplace(r, k); !ok && it->second != k)
                throw Error(ErrorCode::conflict, "conflicting kinds for " + r.str());
        }
        for (const auto* set : {&np->data, &np->annotations})
            for (const auto& t : *set)
                if (t.predicate == vocab::instance_of && t.object.is_resource())
                    extra_types.emplace(t.subject, t.object.resource());
    }
    auto stored = store_type_oracle(store, layer);
    TypeOracle oracle = [&](const Iri& r, const Iri& c) { return extra_types.count({r, c}) > 0 || stored(r, c); };
    auto kind_of = [&](const Iri& r) {
        if (auto it = kinds.find(r); it != kinds.end()) return it->second;
        if (batch_units.count(r)) return ResourceKind::semantic_unit;
        return reg.kind_of(r);
    };

    for (auto* np : fresh) {
        SemanticUnit& u = np->unit;
        if (u.schema_ref) {
            const StatementSchema* schema = kg.schemas().by_gupri(*u.schema_ref);
            if (!schema) {
                result.warnings.push_back("unit " + u.gupri.str() + ": unknown schema " + u.schema_ref->str() +
                                          "; imported without schema");
                u.schema_ref.reset();
            } else {
                if (!u.subject) throw Error(ErrorCode::format, "unit " + u.gupri.str() + " has no subject");
                validate_triples(*schema, *u.subject, kind_of(*u.subject), np->data, oracle)
                    .throw_if_invalid("unit " + u.gupri.str());
            }
        }
        if (u.revises && !reg.contains(*u.revises) && !batch_units.count(*u.revises)) {
            result.warnings.push_back("unit " + u.gupri.str() + ": revised unit " + u.revises->str() +
                                      " is unknown; link dropped");
            u.revises.reset();
        }
    }

    for (const auto& [r, k] : kinds) reg.declare_kind(r, k);
    for (auto* np : fresh)
        for (const auto& t : np->data) store.insert(Quad{t, *np->unit.data_graph});
    // Revision targets first.
    std::set<Iri> done;
    while (done.size() < fresh.size()) {
        bool progress = false;
        for (auto* np : fresh) {
            const SemanticUnit& u = np->unit;
            if (done.count(u.gupri)) continue;
            if (u.revises && !reg.contains(*u.revises)) continue;
            reg.register_unit(u);
            result.units.push_back(u.gupri);
            done.insert(u.gupri);
            progress = true;
        }
        if (!progress) throw Error(ErrorCode::integrity, "revision cycle in imported units");
    }
    std::vector<Triple> annotations;
    for (auto* np : fresh) annotations.insert(annotations.end(), np->annotations.begin(), np->annotations.end());
    if (!annotations.empty()) ingest_triples(kg, std::move(annotations));
}

std::string yaml_text(const YAML::Emitter& out) { return std::string(out.c_str()) + "\n"; }

std::string file_stem(const Iri& gupri) {
    std::string s = gupri.str();
    if (s.rfind("urn:uuid:", 0) == 0) return s.substr(9);
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') c = '_';
    return s;
}

}  // namespace

std::string export_nanopub(const KnowledgeGraph& kg, const Iri& gupri) {
    const auto& reg = kg.registry();
    const auto& store = kg.store();
    const Iri& layer = reg.layer_graph();
    const SemanticUnit& u = reg.get(gupri);
    if (u.kind != UnitKind::statement)
        throw Error(ErrorCode::type_error, "only statement units are exported as nanopubs");

    const Iri np = suffixed(gupri, "nanopub"), head = suffixed(gupri, "head");
    const Iri prov = suffixed(gupri, "provenance"), info = suffixed(gupri, "pubinfo");
    const Iri& assertion = *u.data_graph;
    auto data = store.graph(assertion);

    std::vector<Triple> head_triples{{np, vocab::instance_of, vocab::np_nanopublication},
                                     {np, vocab::np_has_assertion, assertion},
                                     {np, vocab::np_has_provenance, prov},
                                     {np, vocab::np_has_publication_info, info}};
    std::vector<Triple> prov_triples{
        {assertion, vocab::prov_was_attributed_to, u.metadata.author.value_or(u.metadata.creator)},
        {assertion, vocab::prov_generated_at_time, Literal(format_rfc3339(u.metadata.created), vocab::xsd_date_time)}};

    std::vector<Triple> info_triples = reg.layer_triples(u);
    info_triples.push_back({np, vocab::rdfs_label, Literal(render_unit_label(reg, kg.schemas(), gupri))});
    info_triples.push_back({np, vocab::is_negated, Literal(u.negated ? "true" : "false", vocab::xsd_boolean)});
    if (u.category) info_triples.push_back({np, vocab::statement_category, category_class(*u.category)});

    std::set<Iri> mentioned;
    for (const auto& t : data) {
        mentioned.insert(t.subject);
        if (const Iri* r = t.object.as_resource()) mentioned.insert(*r);
    }
    const std::set<Triple> own(data.begin(), data.end());
    for (const auto& r : mentioned) {
        if (reg.declared_kinds().count(r) || reg.contains(r))
            info_triples.push_back({r, vocab::resource_kind, resource_kind_class(reg.kind_of(r))});
        for (const auto& q : store.match({.subject = r}))
            if (q.graph != layer && is_annotation_predicate(q.triple.predicate) && !own.count(q.triple))
                info_triples.push_back(q.triple);
    }
    std::sort(info_triples.begin(), info_triples.end());
    info_triples.erase(std::unique(info_triples.begin(), info_triples.end()), info_triples.end());

    return write_trig({{head, head_triples}, {assertion, data}, {prov, prov_triples}, {info, info_triples}},
                      vocab::standard_prefixes());
}

ImportResult import_nanopub(KnowledgeGraph& kg, std::string_view trig) {
    std::vector<ParsedNanopub> batch{parse_nanopub(trig)};
    ImportResult result;
    import_statements(kg, batch, result);
    return result;
}

// ---------------------------------------------------------------------------

Archive export_container(const KnowledgeGraph& kg, const Iri& root, bool recursive) {
    const auto& reg = kg.registry();
    if (!is_compound(reg.get(root).kind))
        throw Error(ErrorCode::type_error, "unit " + root.str() + " is not a compound unit");
    Archive archive;
    std::map<Iri, std::string> written;

    std::function<std::string(const Iri&, bool)> emit = [&](const Iri& g, bool is_root) -> std::string {
        if (auto it = written.find(g); it != written.end()) return it->second;
        const SemanticUnit& u = reg.get(g);
        if (u.kind == UnitKind::statement) {
            std::string path = "nanopubs/" + file_stem(g) + ".trig";
            written.emplace(g, path);
            archive[path] = export_nanopub(kg, g);
            return path;
        }
        std::string path = is_root ? "manifest.yaml" : "manifests/" + file_stem(g) + ".yaml";
        written.emplace(g, path);

        YAML::Emitter out;
        out << YAML::BeginMap;
        out << YAML::Key << "gupri" << YAML::Value << g.str();
        out << YAML::Key << "class" << YAML::Value << u.unit_class.str();
        out << YAML::Key << "kind" << YAML::Value << std::string(to_string(u.kind));
        if (u.subject) out << YAML::Key << "subject" << YAML::Value << u.subject->str();
        if (u.logic_framework) out << YAML::Key << "logic" << YAML::Value << *u.logic_framework;
        const auto& md = u.metadata;
        out << YAML::Key << "metadata" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "creator" << YAML::Value << md.creator.str();
        out << YAML::Key << "created" << YAML::Value << format_rfc3339(md.created);
        if (md.contributor) out << YAML::Key << "contributor" << YAML::Value << md.contributor->str();
        out << YAML::Key << "last_updated" << YAML::Value << format_rfc3339(md.last_updated);
        if (md.author) out << YAML::Key << "author" << YAML::Value << md.author->str();
        out << YAML::Key << "license" << YAML::Value << md.license.str();
        out << YAML::EndMap;
        if (!u.roles.empty()) {
            out << YAML::Key << "roles" << YAML::Value << YAML::BeginSeq;
            for (const auto& [role, target] : u.roles)
                out << YAML::BeginMap << YAML::Key << "role" << YAML::Value << role << YAML::Key << "unit"
                    << YAML::Value << target.str() << YAML::EndMap;
            out << YAML::EndSeq;
        }
        out << YAML::Key << "members" << YAML::Value << YAML::BeginSeq;
        for (const auto& m : u.members) {
            const SemanticUnit& mu = reg.get(m);
            out << YAML::BeginMap << YAML::Key << "gupri" << YAML::Value << m.str();
            if (mu.kind == UnitKind::statement) {
                out << YAML::Key << "nanopub" << YAML::Value << emit(m, false);
            } else if (recursive) {
                out << YAML::Key << "manifest" << YAML::Value << emit(m, false);
            }
            out << YAML::EndMap;
        }
        out << YAML::EndSeq << YAML::EndMap;
        archive[path] = yaml_text(out);
        return path;
    };
    emit(root, true);
    // Role targets must resolve as well.
    for (const auto& [g, path] : std::map<Iri, std::string>(written)) {
        for (const auto& [role, target] : reg.get(g).roles)
            if (!written.count(target) && reg.get(target).kind == UnitKind::statement) emit(target, false);
    }
    return archive;
}

ImportResult import_container(KnowledgeGraph& kg, const Archive& archive) {
    auto& reg = kg.registry();
    auto file = [&](const std::string& path) -> const std::string& {
        auto it = archive.find(path);
        if (it == archive.end()) throw Error(ErrorCode::format, "archive misses " + path);
        return it->second;
    };

    struct Manifest {
        SemanticUnit unit;
        std::vector<std::string> manifests;  // nested manifest paths, in member order
    };
    std::map<std::string, Manifest> manifests;
    std::vector<std::string> order;  // post-order: members before containers
    std::set<std::string> nanopub_paths;

    std::function<void(const std::string&)> load = [&](const std::string& path) {
        if (manifests.count(path)) return;
        YAML::Node n;
        try {
            n = YAML::Load(file(path));
        } catch (const YAML::Exception& e) {
            throw Error(ErrorCode::format, path + ": " + e.what());
        }
        try {
            const YAML::Node md = n["metadata"];
            Manifest m{SemanticUnit{.gupri = Iri(n["gupri"].as<std::string>()),
                                    .unit_class = Iri(n["class"].as<std::string>()),
                                    .kind = parse_unit_kind(n["kind"].as<std::string>()),
                                    .metadata = UnitMetadata{.creator = Iri(md["creator"].as<std::string>()),
                                                             .created = parse_rfc3339(md["created"].as<std::string>()),
                                                             .last_updated = parse_rfc3339(
                                                                 md["last_updated"].as<std::string>()),
                                                             .license = Iri(md["license"].as<std::string>())}},
                       {}};
            SemanticUnit& u = m.unit;
            if (n["subject"]) u.subject = Iri(n["subject"].as<std::string>());
            if (n["logic"]) u.logic_framework = n["logic"].as<std::string>();
            if (md["contributor"]) u.metadata.contributor = Iri(md["contributor"].as<std::string>());
            if (md["author"]) u.metadata.author = Iri(md["author"].as<std::string>());
            for (const auto& r : n["roles"])
                u.roles.emplace_back(r["role"].as<std::string>(), Iri(r["unit"].as<std::string>()));
            for (const auto& mem : n["members"]) {
                u.members.emplace_back(mem["gupri"].as<std::string>());
                if (mem["nanopub"]) nanopub_paths.insert(mem["nanopub"].as<std::string>());
                if (mem["manifest"]) m.manifests.push_back(mem["manifest"].as<std::string>());
            }
            manifests.emplace(path, m);
            for (const auto& child : m.manifests) load(child);
            order.push_back(path);
        } catch (const YAML::Exception& e) {
            throw Error(ErrorCode::format, path + ": malformed manifest: " + e.what());
        }
    };
    load("manifest.yaml");
    for (const auto& [path, _] : archive)
        if (path.rfind("nanopubs/", 0) == 0) nanopub_paths.insert(path);

    std::vector<ParsedNanopub> batch;
    for (const auto& p : nanopub_paths) batch.push_back(parse_nanopub(file(p)));
    ImportResult result;
    import_statements(kg, batch, result);

    for (const auto& path : order) {
        const SemanticUnit& u = manifests.at(path).unit;
        if (reg.contains(u.gupri)) {
            result.warnings.push_back("unit " + u.gupri.str() + " already present; kept existing");
            continue;
        }
        reg.register_unit(u);
        result.units.push_back(u.gupri);
    }
    return result;
}

// ---------------------------------------------------------------------------

namespace {

void put16(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}
void put32(std::string& out, std::uint32_t v) {
    put16(out, v & 0xffff);
    put16(out, v >> 16);
}
std::uint32_t get16(std::string_view s, std::size_t at) {
    if (at + 2 > s.size()) throw Error(ErrorCode::format, "truncated zip archive");
    return static_cast<unsigned char>(s[at]) | static_cast<unsigned char>(s[at + 1]) << 8;
}
std::uint32_t get32(std::string_view s, std::size_t at) { return get16(s, at) | get16(s, at + 2) << 16; }

std::string deflate_raw(std::string_view in) {
    z_stream z{};
    if (deflateInit2(&z, Z_BEST_COMPRESSION, Z_DEFLATED, -15, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw Error(ErrorCode::format, "deflate init failed");
    std::string out(deflateBound(&z, static_cast<uLong>(in.size())), '\0');
    z.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
    z.avail_in = static_cast<uInt>(in.size());
    z.next_out = reinterpret_cast<Bytef*>(out.data());
    z.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&z, Z_FINISH);
    out.resize(z.total_out);
    deflateEnd(&z);
    if (rc != Z_STREAM_END) throw Error(ErrorCode::format, "deflate failed");
    return out;
}

std::string inflate_raw(std::string_view in, std::size_t size) {
    z_stream z{};
    if (inflateInit2(&z, -15) != Z_OK) throw Error(ErrorCode::format, "inflate init failed");
    std::string out(size, '\0');
    z.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
    z.avail_in = static_cast<uInt>(in.size());
    z.next_out = reinterpret_cast<Bytef*>(out.data());
    z.avail_out = static_cast<uInt>(out.size());
    int rc = inflate(&z, Z_FINISH);
    inflateEnd(&z);
    if (rc != Z_STREAM_END || z.total_out != size) throw Error(ErrorCode::format, "corrupt zip member");
    return out;
}

std::uint32_t crc(std::string_view s) {
    return static_cast<std::uint32_t>(
        crc32(0, reinterpret_cast<const Bytef*>(s.data()), static_cast<uInt>(s.size())));
}

}  // namespace

std::string write_zip(const Archive& archive) {
    std::string out, central;
    // Fixed timestamp keeps archives reproducible: 1980-01-01 00:00.
    const std::uint32_t dos_time = 0, dos_date = (0 << 9) | (1 << 5) | 1;
    for (const auto& [name, content] : archive) {
        const std::string packed = deflate_raw(content);
        const std::uint32_t offset = static_cast<std::uint32_t>(out.size()), sum = crc(content);
        auto header = [&](std::string& h, bool is_central) {
            put32(h, is_central ? 0x02014b50 : 0x04034b50);
            if (is_central) put16(h, 20);
            put16(h, 20);
            put16(h, 0x0800);  // UTF-8 names
            put16(h, 8);
            put16(h, dos_time);
            put16(h, dos_date);
            put32(h, sum);
            put32(h, static_cast<std::uint32_t>(packed.size()));
            put32(h, static_cast<std::uint32_t>(content.size()));
            put16(h, static_cast<std::uint32_t>(name.size()));
            put16(h, 0);
            if (is_central) {
                put16(h, 0);
                put16(h, 0);
                put16(h, 0);
                put32(h, 0);
                put32(h, offset);
            }
            h += name;
        };
        header(out, false);
        out += packed;
        header(central, true);
    }
    const std::uint32_t cd_offset = static_cast<std::uint32_t>(out.size());
    out += central;
    put32(out, 0x06054b50);
    put16(out, 0);
    put16(out, 0);
    put16(out, static_cast<std::uint32_t>(archive.size()));
    put16(out, static_cast<std::uint32_t>(archive.size()));
    put32(out, static_cast<std::uint32_t>(central.size()));
    put32(out, cd_offset);
    put16(out, 0);
    return out;
}

Archive read_zip(std::string_view s) {
    if (s.size() < 22) throw Error(ErrorCode::format, "not a zip archive");
    std::size_t eocd = s.size() - 22;
    while (get32(s, eocd) != 0x06054b50) {
        if (eocd == 0 || s.size() - eocd > 22 + 0xffff) throw Error(ErrorCode::format, "zip end record not found");
        --eocd;
    }
    const std::uint32_t count = get16(s, eocd + 10);
    std::size_t at = get32(s, eocd + 16);
    Archive out;
    for (std::uint32_t i = 0; i < count; ++i) {
        if (get32(s, at) != 0x02014b50) throw Error(ErrorCode::format, "corrupt zip directory");
        const std::uint32_t method = get16(s, at + 10), sum = get32(s, at + 16);
        const std::uint32_t packed = get32(s, at + 20), size = get32(s, at + 24);
        const std::uint32_t name_len = get16(s, at + 28), extra = get16(s, at + 30), comment = get16(s, at + 32);
        const std::uint32_t local = get32(s, at + 42);
        if (at + 46 + name_len > s.size()) throw Error(ErrorCode::format, "truncated zip archive");
        std::string name(s.substr(at + 46, name_len));
        at += 46 + name_len + extra + comment;

        const std::size_t data = local + 30 + get16(s, local + 26) + get16(s, local + 28);
        if (data + packed > s.size()) throw Error(ErrorCode::format, "truncated zip member " + name);
        std::string_view raw = s.substr(data, packed);
        std::string content;
        if (method == 0) content = std::string(raw);
        else if (method == 8) content = inflate_raw(raw, size);
        else throw Error(ErrorCode::format, "unsupported zip compression in " + name);
        if (crc(content) != sum) throw Error(ErrorCode::format, "checksum mismatch in " + name);
        if (!name.empty() && name.back() != '/') out.emplace(std::move(name), std::move(content));
    }
    return out;
}

// ---------------------------------------------------------------------------

PartitionReport ingest_rdf(KnowledgeGraph& kg, const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::not_found, "cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    RdfSyntax syntax = syntax_for_path(path.string());
    if (syntax != RdfSyntax::ntriples && syntax != RdfSyntax::turtle)
        throw Error(ErrorCode::format, path.string() + ": raw ingest takes N-Triples or Turtle");
    return ingest_triples(kg, parse_triples(buf.str(), syntax));
}

std::string export_nquads(const KnowledgeGraph& kg) {
    const auto& quads = kg.store().quads();
    return write_nquads(std::vector<Quad>(quads.begin(), quads.end()));
}

}  // namespace semunit
