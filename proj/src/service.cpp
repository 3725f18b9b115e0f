#include "semunit/service.hpp"

#include <httplib.h>

#include <fstream>
#include <mutex>
#include <shared_mutex>

#include "semunit/error.hpp"
#include "semunit/exploration.hpp"
#include "semunit/interop.hpp"
#include "semunit/json_io.hpp"
#include "semunit/partition.hpp"
#include "semunit/question.hpp"
#include "semunit/rdf_io.hpp"
#include "semunit/registry.hpp"
#include "semunit/render.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

namespace fs = std::filesystem;
using nlohmann::json;

Workspace open_workspace(const fs::path& root, GraphConfig config) {
    fs::create_directories(root / "schemas");
    Workspace ws{root, std::make_unique<KnowledgeGraph>(std::move(config)), {}};
    for (auto& s : load_schema_dir(root / "schemas")) ws.kg->schemas().add(std::move(s));
    if (fs::exists(root / "build.yaml")) ws.build = load_build_config(root / "build.yaml");
    ws.kg->open_log(root / "log.nq");
    return ws;
}

void add_schemas(Workspace& ws, const fs::path& source) {
    std::vector<fs::path> files;
    if (fs::is_directory(source)) {
        for (const auto& e : fs::directory_iterator(source)) {
            auto ext = e.path().extension();
            if (e.is_regular_file() && (ext == ".yaml" || ext == ".yml")) files.push_back(e.path());
        }
        std::sort(files.begin(), files.end());
    } else {
        files.push_back(source);
    }
    for (const auto& f : files) {
        auto schemas = load_schema_file(f);
        if (f.filename() == "build.yaml") continue;
        bool fresh = false;
        for (auto& s : schemas) {
            if (const StatementSchema* known = ws.kg->schemas().by_class(s.unit_class)) {
                if (known->gupri != s.gupri)
                    throw Error(ErrorCode::conflict, "schema for " + s.unit_class.str() + " already registered");
                continue;
            }
            ws.kg->schemas().add(std::move(s));
            fresh = true;
        }
        if (fresh) fs::copy_file(f, ws.root / "schemas" / f.filename(), fs::copy_options::overwrite_existing);
    }
}

int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::not_found: return 404;
        case ErrorCode::validation: return 422;
        case ErrorCode::conflict: return 409;
        case ErrorCode::format: return 400;
        case ErrorCode::type_error: return 400;
        case ErrorCode::integrity: return 409;
    }
    return 500;
}

json error_to_json(const Error& e) {
    return {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}, {"details", e.details()}}}};
}

namespace {

ApiResponse ok(const json& body, int status = 200) { return {status, "application/json", body.dump()}; }

json parse_body(const std::string& body) {
    if (body.empty()) return json::object();
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::format, std::string("request body is not JSON: ") + e.what());
    }
}

std::string query_param(const ApiRequest& r, const std::string& key, const std::string& fallback = "") {
    auto it = r.query.find(key);
    return it == r.query.end() ? fallback : it->second;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used != text.size() || v < 0) throw std::invalid_argument(text);
        return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::format, "bad " + what + " '" + text + "'");
    }
}

// Cursor pagination: the cursor is the offset of the next page.
json paginate(const ApiRequest& r, const json& items) {
    const std::size_t offset = parse_count(query_param(r, "cursor", "0"), "cursor");
    const std::size_t limit = parse_count(query_param(r, "limit", std::to_string(Api::default_page)), "limit");
    json page = json::array();
    for (std::size_t i = offset; i < items.size() && i < offset + limit; ++i) page.push_back(items[i]);
    json out{{"items", page}, {"total", items.size()}};
    out["next_cursor"] = offset + limit < items.size() ? json(std::to_string(offset + limit)) : json(nullptr);
    return out;
}

json iris_json(const std::vector<Iri>& v) {
    json out = json::array();
    for (const auto& i : v) out.push_back(i.str());
    return out;
}

std::vector<Iri> iris_from_json(const json& j) {
    std::vector<Iri> out;
    for (const auto& e : j) out.push_back(vocab::expand(e.get<std::string>()));
    return out;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }
bool ends_with(std::string_view s, std::string_view p) {
    return s.size() >= p.size() && s.substr(s.size() - p.size()) == p;
}

const StatementSchema& schema_from_form(const KnowledgeGraph& kg, const json& form) {
    if (!form.contains("schema")) throw Error(ErrorCode::format, "form needs a 'schema' field");
    Iri id = vocab::expand(form.at("schema").get<std::string>());
    if (const StatementSchema* s = kg.schemas().by_class(id)) return *s;
    if (const StatementSchema* s = kg.schemas().by_gupri(id)) return *s;
    throw Error(ErrorCode::not_found, "unknown schema " + id.str());
}

// Plain JSON strings and numbers in literal slots take the slot's datatype.
SlotBindings bindings_from_form(const StatementSchema& schema, const Iri& subject, const json& slots) {
    SlotBindings b{subject, {}};
    if (!slots.is_object()) throw Error(ErrorCode::format, "'slots' must be an object");
    for (const auto& [name, value] : slots.items()) {
        const Slot* slot = schema.slot(name);
        if (!slot) throw Error(ErrorCode::validation, "schema has no slot '" + name + "'");
        auto term = [&](const json& v) -> Term {
            if (slot->value_kind == ValueKind::literal && (v.is_string() || v.is_number())) {
                std::string lex = v.is_string() ? v.get<std::string>() : v.dump();
                return Literal(lex, slot->datatype.value_or(xsd_string()));
            }
            return term_from_json(v);
        };
        auto& out = b.values[name];
        if (value.is_array()) {
            for (const auto& v : value) out.push_back(term(v));
        } else {
            out.push_back(term(value));
        }
    }
    return b;
}

void declare_from_form(KnowledgeGraph& kg, const json& form) {
    if (!form.contains("declare")) return;
    for (const auto& d : form.at("declare")) {
        std::optional<Iri> cls;
        if (d.contains("class")) cls = vocab::expand(d.at("class").get<std::string>());
        declare_resource(kg, vocab::expand(d.at("resource").get<std::string>()),
                         parse_resource_kind(d.at("kind").get<std::string>()), cls);
    }
}

MintOptions options_from_form(const json& form) {
    MintOptions o;
    o.negated = form.value("negated", false);
    if (form.contains("revises")) o.revises = vocab::expand(form.at("revises").get<std::string>());
    return o;
}

json unit_view(const KnowledgeGraph& kg, const SemanticUnit& u) {
    const auto& reg = kg.registry();
    json j = unit_to_json(u);
    j["label"] = render_unit_label(reg, kg.schemas(), u.gupri);
    if (u.data_graph) j["data_graph_triples"] = triples_to_json(kg.store().graph(*u.data_graph));
    else if (u.kind != UnitKind::question) j["data_graph_triples"] = triples_to_json(reg.merged_data_graph(u.gupri));
    if (u.kind == UnitKind::statement) {
        const StatementSchema* s = kg.schemas().by_class(u.unit_class);
        j["mindmap"] = mindmap_to_json(s ? render_mindmap(reg, *s, u) : render_generic_mindmap(reg, u));
    }
    j["containing"] = iris_json(reg.containers_of(u.gupri));
    j["superseded"] = reg.superseded(u.gupri);
    return j;
}

const SemanticUnit& question_unit(const KnowledgeGraph& kg, const std::string& id) {
    const SemanticUnit& u = kg.registry().get(vocab::expand(id));
    if (u.kind != UnitKind::question) throw Error(ErrorCode::type_error, "unit " + id + " is not a question unit");
    return u;
}

std::vector<Iri> all_units(const KnowledgeGraph& kg) {
    std::vector<Iri> out;
    for (const SemanticUnit* u : kg.registry().all())
        if (u->kind != UnitKind::question) out.push_back(u->gupri);
    return out;
}

}  // namespace

ApiResponse Api::handle(const ApiRequest& request) {
    try {
        if (request.method == "GET") {
            std::shared_lock lock(kg_.mutex());
            return dispatch(request);
        }
        std::unique_lock lock(kg_.mutex());
        ApiResponse r = dispatch(request);
        kg_.flush();
        return r;
    } catch (const Error& e) {
        return {http_status(e.code()), "application/json", error_to_json(e).dump()};
    } catch (const json::exception& e) {
        Error err(ErrorCode::format, std::string("malformed request: ") + e.what());
        return {400, "application/json", error_to_json(err).dump()};
    }
}

ApiResponse Api::dispatch(const ApiRequest& r) {
    const std::string& p = r.path;
    const auto& reg = kg_.registry();
    auto tail = [&](std::string_view prefix, std::string_view suffix = "") {
        return vocab::expand(p.substr(prefix.size(), p.size() - prefix.size() - suffix.size()));
    };

    if (r.method == "GET") {
        if (p == "/profile") {
            auto top = parse_count(query_param(r, "top", "10"), "top");
            return ok(profile_to_json(profile(kg_, top)));
        }
        if (p == "/classes") {
            json items = json::array();
            for (const auto& [c, n] : profile(kg_, 0).class_instances) items.push_back({{"class", c.str()}, {"instances", n}});
            return ok(paginate(r, items));
        }
        if (p == "/unit-classes") {
            json items = json::array();
            for (const auto& c : reg.unit_classes())
                items.push_back({{"class", c.str()}, {"units", reg.of_class(c).size()}});
            return ok(paginate(r, items));
        }
        if (starts_with(p, "/units/")) {
            if (ends_with(p, "/label")) {
                Iri g = tail("/units/", "/label");
                reg.get(g);
                return ok({{"gupri", g.str()}, {"label", render_unit_label(reg, kg_.schemas(), g)}});
            }
            if (ends_with(p, "/mindmap")) {
                const SemanticUnit& u = reg.get(tail("/units/", "/mindmap"));
                if (u.kind != UnitKind::statement)
                    throw Error(ErrorCode::type_error, "mind-maps are defined for statement units");
                const StatementSchema* s = kg_.schemas().by_class(u.unit_class);
                return ok(mindmap_to_json(s ? render_mindmap(reg, *s, u) : render_generic_mindmap(reg, u)));
            }
            if (ends_with(p, "/containing")) {
                Iri g = tail("/units/", "/containing");
                if (reg.contains(g)) return ok(paginate(r, iris_json(reg.containers_of(g))));
                json by_kind = json::object();
                for (const auto& [k, units] : reg.units_containing(g)) by_kind[std::string(to_string(k))] = iris_json(units);
                if (by_kind.empty()) throw Error(ErrorCode::not_found, "unknown unit or resource " + g.str());
                return ok(by_kind);
            }
            return ok(unit_view(kg_, reg.get(tail("/units/"))));
        }
        if (starts_with(p, "/navtree/")) {
            std::optional<std::set<Iri>> filter;
            if (auto f = query_param(r, "link_filter"); !f.empty()) {
                filter.emplace();
                std::size_t start = 0;
                while (start <= f.size()) {
                    auto end = f.find(',', start);
                    if (end == std::string::npos) end = f.size();
                    if (end > start) filter->insert(vocab::expand(f.substr(start, end - start)));
                    start = end + 1;
                }
            }
            bool statements = query_param(r, "statements", "false") == "true";
            return ok(navtree_to_json(navigation_tree(kg_, tail("/navtree/"), filter, statements)));
        }
        if (starts_with(p, "/zoom/")) {
            Iri g = tail("/zoom/");
            ZoomLevel level = parse_zoom_level(query_param(r, "level", std::string(to_string(level_of_target(kg_, g)))));
            ZoomResult z = zoom(kg_, g, level);
            json units = json::array();
            for (const auto& u : z.units) {
                json e{{"gupri", u.str()}};
                if (reg.contains(u)) e["label"] = render_unit_label(reg, kg_.schemas(), u);
                units.push_back(e);
            }
            return ok({{"level", std::string(to_string(z.level))},
                       {"units", paginate(r, units)},
                       {"triples", triples_to_json(z.triples)}});
        }
        if (p == "/hotspots") {
            std::optional<std::chrono::seconds> window;
            if (auto w = query_param(r, "window"); !w.empty()) window = bucket_span(parse_time_bucket(w));
            json items = json::array();
            for (const auto& [c, n] : hotspots(kg_, window)) items.push_back({{"class", c.str()}, {"units", n}});
            return ok(paginate(r, items));
        }
        if (starts_with(p, "/export/")) {
            Iri g = tail("/export/");
            std::string format = query_param(r, "format", "trig");
            if (format == "trig") return {200, "application/trig", export_nanopub(kg_, g)};
            if (format == "archive") return {200, "application/zip", write_zip(export_container(kg_, g, true))};
            throw Error(ErrorCode::format, "unknown export format '" + format + "'");
        }
        if (starts_with(p, "/questions/") && ends_with(p, "/sparql")) {
            const SemanticUnit& q = question_unit(kg_, p.substr(11, p.size() - 11 - 7));
            QueryPlan plan = compile(question_of_unit(q), kg_.schemas(), reg.layer_graph());
            return ok({{"gupri", q.gupri.str()}, {"sparql", emit_sparql(plan)}});
        }
        throw Error(ErrorCode::not_found, "no route GET " + p);
    }

    if (r.method != "POST") throw Error(ErrorCode::format, "unsupported method " + r.method);
    json body = parse_body(r.body);
    if (p == "/facets") {
        std::vector<Iri> units = body.contains("units") ? iris_from_json(body.at("units")) : all_units(kg_);
        std::vector<FacetFilter> filters;
        if (body.contains("filters"))
            for (const auto& f : body.at("filters")) filters.push_back(facet_filter_from_json(f));
        auto kept = apply_facets(kg_, units, filters);
        return ok({{"facets", facets_to_json(facet_options(kg_, kept))}, {"units", paginate(r, iris_json(kept))}});
    }
    if (p == "/table") {
        std::optional<Iri> cls;
        if (body.contains("unit_class")) cls = vocab::expand(body.at("unit_class").get<std::string>());
        std::vector<Iri> units = body.contains("units") ? iris_from_json(body.at("units"))
                                 : cls                  ? reg.of_class(*cls)
                                                        : std::vector<Iri>{};
        Table t = tabulate(kg_, units, cls);
        if (body.value("format", "json") == "csv") return {200, "text/csv; charset=utf-8", t.to_csv()};
        return ok(table_to_json(t));
    }
    if (p == "/statements") {
        const StatementSchema& schema = schema_from_form(kg_, body);
        declare_from_form(kg_, body);
        Iri subject = vocab::expand(body.at("subject").get<std::string>());
        SlotBindings b = bindings_from_form(schema, subject, body.value("slots", json::object()));
        SemanticUnit u = mint_statement_unit(kg_, schema, b, options_from_form(body));
        return ok(unit_view(kg_, reg.get(u.gupri)), 201);
    }
    if (starts_with(p, "/statements/") && ends_with(p, "/negate")) {
        SemanticUnit u = negate_statement_unit(kg_, tail("/statements/", "/negate"));
        return ok(unit_view(kg_, reg.get(u.gupri)), 201);
    }
    if (starts_with(p, "/about/")) {
        Iri target = tail("/about/");
        const StatementSchema& schema = schema_from_form(kg_, body);
        SlotBindings b = bindings_from_form(schema, target, body.value("slots", json::object()));
        SemanticUnit u = statement_about_unit(kg_, target, schema, b, options_from_form(body));
        return ok(unit_view(kg_, reg.get(u.gupri)), 201);
    }
    if (p == "/questions") {
        Question q = question_from_json(body);
        compile(q, kg_.schemas(), reg.layer_graph());
        SemanticUnit u = register_question(kg_, q);
        return ok({{"gupri", u.gupri.str()}, {"question", question_to_json(q)}}, 201);
    }
    if (starts_with(p, "/questions/") && ends_with(p, "/execute")) {
        const SemanticUnit& q = question_unit(kg_, p.substr(11, p.size() - 11 - 8));
        QueryPlan plan = compile(question_of_unit(q), kg_.schemas(), reg.layer_graph());
        json result = result_to_json(execute(plan, kg_));
        if (result.contains("rows")) result["rows"] = paginate(r, result["rows"]);
        return ok(result);
    }
    if (p == "/ingest") {
        std::string text = body.value("text", "");
        RdfSyntax syntax = body.value("format", "ntriples") == "turtle" ? RdfSyntax::turtle : RdfSyntax::ntriples;
        PartitionReport report = ingest_triples(kg_, parse_triples(text, syntax));
        json created = json::object();
        for (const auto& [c, n] : report.units_created) created[c.str()] = n;
        return ok({{"units_created", created},
                   {"generic_units", report.generic_units},
                   {"triples_total", report.triples_total},
                   {"triples_claimed", report.triples_claimed},
                   {"unmatched_predicates", iris_json(report.unmatched_predicates)}},
                  201);
    }
    if (p == "/build") {
        json out = json::object();
        for (const auto& [kind, res] : build_all(kg_, build_)) {
            out[std::string(to_string(kind))] = {{"units", res.units.size()},
                                                 {"created", res.created},
                                                 {"updated", res.updated},
                                                 {"retired", res.retired},
                                                 {"diagnostics", res.diagnostics}};
        }
        return ok(out);
    }
    throw Error(ErrorCode::not_found, "no route POST " + p);
}

void serve(Api& api, const std::string& host, int port) {
    httplib::Server server;
    auto adapt = [&api](const std::string& method) {
        return [&api, method](const httplib::Request& req, httplib::Response& res) {
            ApiRequest r{method, req.path, {}, req.body};
            for (const auto& [k, v] : req.params) r.query[k] = v;
            ApiResponse out = api.handle(r);
            res.status = out.status;
            res.set_content(out.body, out.content_type);
        };
    };
    server.Get(".*", adapt("GET"));
    server.Post(".*", adapt("POST"));
    if (!server.bind_to_port(host, port))
        throw Error(ErrorCode::conflict, "cannot bind " + host + ":" + std::to_string(port));
    server.listen_after_bind();
}

}  // namespace semunit
