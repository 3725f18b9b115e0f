#include "semunit/exploration.hpp"

#include <algorithm>
#include <functional>

#include "semunit/compound.hpp"
#include "semunit/error.hpp"
#include "semunit/json_io.hpp"
#include "semunit/partition.hpp"
#include "semunit/validate.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

using nlohmann::json;

namespace {

std::vector<std::pair<Iri, std::size_t>> top_k(const std::map<Iri, std::size_t>& counts, std::size_t k) {
    std::vector<std::pair<Iri, std::size_t>> v(counts.begin(), counts.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (v.size() > k) v.erase(v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v;
}

std::set<Iri> classes_of(const KnowledgeGraph& kg, const Iri& r) {
    std::set<Iri> out;
    for (const auto& q : kg.store().match({.subject = r, .predicate = vocab::instance_of}))
        if (q.graph != kg.registry().layer_graph() && q.triple.object.is_resource())
            out.insert(q.triple.object.resource());
    return out;
}

// Subject plus slot values (schema units) or every resource of the graph.
std::vector<Term> displayed_terms(const KnowledgeGraph& kg, const SemanticUnit& u) {
    std::vector<Term> out;
    if (u.subject) out.emplace_back(*u.subject);
    auto data = kg.store().graph(*u.data_graph);
    if (const StatementSchema* s = kg.schemas().by_class(u.unit_class); s && u.subject) {
        auto ex = extract_slots(*s, *u.subject, data);
        for (const auto& slot : s->slots)
            for (const auto& v : ex.values[slot.name]) out.push_back(v);
    } else {
        for (const auto& t : data) {
            out.emplace_back(t.subject);
            out.push_back(t.object);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::set<Iri> mentioned_resources(const KnowledgeGraph& kg, const SemanticUnit& u) {
    std::set<Iri> out;
    for (const auto& t : kg.store().graph(*u.data_graph)) {
        out.insert(t.subject);
        if (const Iri* r = t.object.as_resource()) out.insert(*r);
    }
    return out;
}

std::optional<Decimal> numeric_value(const Term& t) {
    const Literal* l = t.as_literal();
    if (!l || !l->is_numeric()) return std::nullopt;
    return Decimal::parse(l->lexical());
}

json decimal_json(const std::optional<Decimal>& d) { return d ? json(d->lexical()) : json(nullptr); }

}  // namespace

// ---------------------------------------------------------------------------

ProfileSummary profile(const KnowledgeGraph& kg, std::size_t top) {
    const auto& reg = kg.registry();
    const Iri& layer = reg.layer_graph();
    ProfileSummary p;

    std::map<Iri, std::set<Iri>> instances;
    for (const auto& q : kg.store().match({.predicate = vocab::instance_of}))
        if (q.graph != layer && q.triple.object.is_resource())
            instances[q.triple.object.resource()].insert(q.triple.subject);
    for (const auto& [c, s] : instances) p.class_instances[c] = s.size();
    p.data_triples = kg.store().size() - kg.store().graph_size(layer);

    for (const SemanticUnit* u : reg.all()) {
        p.unit_classes[u->unit_class]++;
        p.unit_kinds[u->kind]++;
    }

    auto active = active_statement_units(reg);
    p.statement_units = active.size();
    std::map<Iri, std::vector<const SemanticUnit*>> by_class;
    std::map<std::string, std::size_t> labels;
    for (const auto& g : active) {
        const SemanticUnit& u = reg.get(g);
        by_class[u.unit_class].push_back(&u);
        std::set<std::string> seen;
        for (const auto& t : displayed_terms(kg, u))
            if (t.is_resource()) seen.insert(display_label(kg.store(), layer, t));
        for (const auto& l : seen) labels[l]++;
    }
    for (const auto& [cls, units] : by_class) {
        const StatementSchema* schema = kg.schemas().by_class(cls);
        if (!schema) continue;
        for (const auto& slot : schema->slots) {
            SlotDistribution d{cls, slot.name, {}, {}};
            std::map<Iri, std::size_t> freq;
            double sum = 0;
            for (const SemanticUnit* u : units) {
                auto ex = extract_slots(*schema, *u->subject, kg.store().graph(*u->data_graph));
                for (const auto& v : ex.values[slot.name]) {
                    if (const Iri* r = v.as_resource()) {
                        freq[*r]++;
                    } else if (auto n = numeric_value(v)) {
                        d.numeric.count++;
                        sum += n->to_double();
                        if (!d.numeric.min || *n < *d.numeric.min) d.numeric.min = n;
                        if (!d.numeric.max || *d.numeric.max < *n) d.numeric.max = n;
                    }
                }
            }
            if (d.numeric.count) d.numeric.mean = sum / static_cast<double>(d.numeric.count);
            d.top_resources = top_k(freq, top);
            p.slots.push_back(std::move(d));
        }
    }
    std::vector<std::pair<std::string, std::size_t>> lf(labels.begin(), labels.end());
    std::stable_sort(lf.begin(), lf.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (lf.size() > top) lf.resize(top);
    p.label_frequencies = std::move(lf);
    return p;
}

json profile_to_json(const ProfileSummary& p) {
    json classes = json::object(), units = json::object(), kinds = json::object(), slots = json::array();
    for (const auto& [c, n] : p.class_instances) classes[c.str()] = n;
    for (const auto& [c, n] : p.unit_classes) units[c.str()] = n;
    for (const auto& [k, n] : p.unit_kinds) kinds[std::string(to_string(k))] = n;
    for (const auto& d : p.slots) {
        json top = json::array();
        for (const auto& [r, n] : d.top_resources) top.push_back({{"resource", r.str()}, {"count", n}});
        slots.push_back({{"unit_class", d.unit_class.str()},
                         {"slot", d.slot},
                         {"numeric",
                          {{"count", d.numeric.count},
                           {"min", decimal_json(d.numeric.min)},
                           {"max", decimal_json(d.numeric.max)},
                           {"mean", d.numeric.mean}}},
                         {"top_resources", top}});
    }
    json words = json::array();
    for (const auto& [l, n] : p.label_frequencies) words.push_back({{"label", l}, {"count", n}});
    return {{"class_instances", classes}, {"unit_classes", units},   {"unit_kinds", kinds},
            {"slots", slots},             {"label_frequencies", words}, {"statement_units", p.statement_units},
            {"data_triples", p.data_triples}};
}

// ---------------------------------------------------------------------------

NavTree navigation_tree(const KnowledgeGraph& kg, const Iri& root, const std::optional<std::set<Iri>>& link_filter,
                        bool include_statements) {
    const auto& reg = kg.registry();
    const SemanticUnit& group = reg.get(root);
    if (group.kind != UnitKind::item_group && group.kind != UnitKind::granular_item_group)
        throw Error(ErrorCode::type_error, "unit " + root.str() + " is not an item group or granular item group");

    std::map<Iri, Iri> item_of_subject;
    std::vector<Iri> items;
    for (const auto& m : group.members) {
        const SemanticUnit& u = reg.get(m);
        if (u.kind != UnitKind::item) continue;
        items.push_back(m);
        item_of_subject.emplace(*u.subject, m);
    }
    std::map<Iri, std::string> label;
    for (const auto& i : items) label[i] = render_unit_label(reg, kg.schemas(), i);

    // Directed links item -> (child item, linking statement).
    std::map<Iri, std::map<Iri, Iri>> links;
    std::map<Iri, std::size_t> indegree;
    std::set<Iri> linked;
    for (const auto& a : items) {
        const SemanticUnit& item = reg.get(a);
        for (const auto& s : item.members) {
            const SemanticUnit& st = reg.get(s);
            if (reg.superseded(s)) continue;
            if (link_filter && !link_filter->count(st.unit_class)) continue;
            for (const auto& t : kg.store().graph(*st.data_graph)) {
                const Iri* o = t.object.as_resource();
                if (!o || *o == *item.subject) continue;
                auto b = item_of_subject.find(*o);
                if (b == item_of_subject.end()) continue;
                if (links[a].emplace(b->second, s).second) indegree[b->second]++;
                linked.insert(a);
                linked.insert(b->second);
            }
        }
    }
    std::vector<Iri> shown;
    for (const auto& i : items)
        if (!link_filter || linked.count(i)) shown.push_back(i);
    auto by_label = [&](const Iri& x, const Iri& y) { return std::tie(label[x], x) < std::tie(label[y], y); };
    std::sort(shown.begin(), shown.end(), by_label);

    std::set<Iri> reached;
    std::vector<Iri> path;
    std::function<NavNode(const Iri&, std::optional<Iri>)> expand = [&](const Iri& item, std::optional<Iri> via) {
        NavNode n{item, label[item], via};
        reached.insert(item);
        if (std::find(path.begin(), path.end(), item) != path.end()) {
            n.revisit = true;
            return n;
        }
        if (include_statements) {
            for (const auto& s : reg.get(item).members)
                if (!reg.superseded(s)) n.statements.emplace_back(s, render_unit_label(reg, kg.schemas(), s));
        }
        path.push_back(item);
        std::vector<std::pair<Iri, Iri>> kids(links[item].begin(), links[item].end());
        std::sort(kids.begin(), kids.end(), [&](const auto& x, const auto& y) { return by_label(x.first, y.first); });
        for (const auto& [child, s] : kids) n.children.push_back(expand(child, s));
        path.pop_back();
        return n;
    };

    NavTree tree{root, render_unit_label(reg, kg.schemas(), root), {}};
    for (const auto& i : shown)
        if (!indegree[i]) tree.nodes.push_back(expand(i, std::nullopt));
    for (const auto& i : shown)
        if (!reached.count(i)) tree.nodes.push_back(expand(i, std::nullopt));
    return tree;
}

namespace {

json nav_node_json(const NavNode& n) {
    json j{{"item", n.item.str()}, {"label", n.label}, {"revisit", n.revisit}};
    j["via"] = n.via ? json(n.via->str()) : json(nullptr);
    json st = json::array();
    for (const auto& [g, l] : n.statements) st.push_back({{"gupri", g.str()}, {"label", l}});
    j["statements"] = st;
    json kids = json::array();
    for (const auto& c : n.children) kids.push_back(nav_node_json(c));
    j["children"] = kids;
    return j;
}

}  // namespace

json navtree_to_json(const NavTree& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes) nodes.push_back(nav_node_json(n));
    return {{"root", t.root.str()}, {"label", t.label}, {"nodes", nodes}};
}

// ---------------------------------------------------------------------------

std::string_view to_string(ZoomLevel level) {
    switch (level) {
        case ZoomLevel::triples: return "triples";
        case ZoomLevel::statements: return "statements";
        case ZoomLevel::items: return "items";
        case ZoomLevel::item_groups: return "item-groups";
        case ZoomLevel::whole_graph: return "whole-graph";
    }
    return "triples";
}

ZoomLevel parse_zoom_level(std::string_view text) {
    for (auto l : {ZoomLevel::triples, ZoomLevel::statements, ZoomLevel::items, ZoomLevel::item_groups,
                   ZoomLevel::whole_graph})
        if (to_string(l) == text) return l;
    throw Error(ErrorCode::validation, "unknown zoom level '" + std::string(text) + "'");
}

ZoomLevel level_of(UnitKind kind) {
    switch (kind) {
        case UnitKind::statement: return ZoomLevel::statements;
        case UnitKind::item:
        case UnitKind::granularity_tree:
        case UnitKind::logical_argument: return ZoomLevel::items;
        case UnitKind::item_group:
        case UnitKind::granular_item_group:
        case UnitKind::standard_information:
        case UnitKind::context:
        case UnitKind::dataset: return ZoomLevel::item_groups;
        case UnitKind::question: break;
    }
    throw Error(ErrorCode::type_error, "question units have no representational granularity level");
}

ZoomLevel level_of_target(const KnowledgeGraph& kg, const Iri& gupri) {
    if (gupri == kg.config().store_iri) return ZoomLevel::whole_graph;
    if (const SemanticUnit* u = kg.registry().find(gupri)) return level_of(u->kind);
    if (!kg.registry().statements_mentioning(gupri).empty()) return ZoomLevel::triples;
    throw Error(ErrorCode::not_found, "unknown unit or resource " + gupri.str());
}

ZoomResult zoom(const KnowledgeGraph& kg, const Iri& gupri, ZoomLevel target) {
    const auto& reg = kg.registry();
    const ZoomLevel from = level_of_target(kg, gupri);
    ZoomResult r{target, {}, {}};
    auto at_level = [&](const Iri& g) {
        const SemanticUnit& u = reg.get(g);
        return u.kind != UnitKind::question && level_of(u.kind) == target;
    };
    if (target == from) {
        r.units.push_back(gupri);
        return r;
    }
    if (from == ZoomLevel::whole_graph) {
        if (target == ZoomLevel::triples) {
            for (const auto& q : kg.store().quads())
                if (q.graph != reg.layer_graph()) r.triples.push_back(q.triple);
            std::sort(r.triples.begin(), r.triples.end());
            r.triples.erase(std::unique(r.triples.begin(), r.triples.end()), r.triples.end());
        } else {
            for (const SemanticUnit* u : reg.all())
                if (at_level(u->gupri)) r.units.push_back(u->gupri);
        }
        return r;
    }
    if (target < from) {
        if (target == ZoomLevel::triples) {
            auto merged = reg.merged_data_graph(gupri);
            r.triples.assign(merged.begin(), merged.end());
        } else {
            for (const auto& m : reg.member_closure(gupri))
                if (at_level(m)) r.units.push_back(m);
        }
        return r;
    }
    if (target == ZoomLevel::whole_graph) {
        r.units.push_back(kg.config().store_iri);
        return r;
    }
    std::set<Iri> seen;
    std::vector<Iri> stack;
    if (from == ZoomLevel::triples) stack = reg.statements_mentioning(gupri);
    else stack = reg.containers_of(gupri);
    seen.insert(stack.begin(), stack.end());
    while (!stack.empty()) {
        Iri cur = stack.back();
        stack.pop_back();
        for (const auto& c : reg.containers_of(cur))
            if (seen.insert(c).second) stack.push_back(c);
    }
    for (const auto& g : seen)
        if (at_level(g)) r.units.push_back(g);
    return r;
}

// ---------------------------------------------------------------------------

std::string_view to_string(TimeBucket b) {
    switch (b) {
        case TimeBucket::days7: return "7d";
        case TimeBucket::days30: return "30d";
        case TimeBucket::days365: return "365d";
        case TimeBucket::days3650: return "3650d";
        case TimeBucket::all: return "all";
    }
    return "all";
}

TimeBucket parse_time_bucket(std::string_view text) {
    for (auto b : {TimeBucket::days7, TimeBucket::days30, TimeBucket::days365, TimeBucket::days3650, TimeBucket::all})
        if (to_string(b) == text) return b;
    throw Error(ErrorCode::validation, "unknown time window '" + std::string(text) + "' (7d, 30d, 365d, 3650d, all)");
}

std::optional<std::chrono::seconds> bucket_span(TimeBucket b) {
    using std::chrono::days;
    switch (b) {
        case TimeBucket::days7: return days(7);
        case TimeBucket::days30: return days(30);
        case TimeBucket::days365: return days(365);
        case TimeBucket::days3650: return days(3650);
        case TimeBucket::all: return std::nullopt;
    }
    return std::nullopt;
}

namespace {

bool within(Timestamp t, Timestamp now, std::optional<std::chrono::seconds> span) {
    return !span || t >= now - *span;
}

}  // namespace

FacetMap facet_options(const KnowledgeGraph& kg, const std::vector<Iri>& units) {
    const auto& reg = kg.registry();
    FacetMap f;
    std::map<std::pair<Iri, std::string>, SlotFacet> slots;
    const Timestamp now = kg.now();
    for (const auto& g : units) {
        const SemanticUnit& u = reg.get(g);
        f.unit_classes[u.unit_class]++;
        if (u.category) f.categories[*u.category]++;
        f.negated[u.negated]++;
        for (auto b : {TimeBucket::days7, TimeBucket::days30, TimeBucket::days365, TimeBucket::days3650,
                       TimeBucket::all})
            if (within(u.metadata.created, now, bucket_span(b))) f.created[b]++;
        if (u.kind != UnitKind::statement) continue;
        const StatementSchema* schema = kg.schemas().by_class(u.unit_class);
        if (!schema) continue;
        auto ex = extract_slots(*schema, *u.subject, kg.store().graph(*u.data_graph));
        for (const auto& slot : schema->slots) {
            auto& sf = slots.try_emplace({u.unit_class, slot.name}, SlotFacet{u.unit_class, slot.name}).first->second;
            for (const auto& v : ex.values[slot.name]) {
                if (const Iri* r = v.as_resource()) {
                    for (const auto& c : classes_of(kg, *r)) sf.resource_classes[c]++;
                } else if (auto n = numeric_value(v)) {
                    if (!sf.min || *n < *sf.min) sf.min = n;
                    if (!sf.max || *sf.max < *n) sf.max = n;
                }
            }
        }
    }
    for (auto& [_, sf] : slots) f.slots.push_back(std::move(sf));
    return f;
}

std::vector<Iri> apply_facets(const KnowledgeGraph& kg, const std::vector<Iri>& units,
                              const std::vector<FacetFilter>& filters) {
    const auto& reg = kg.registry();
    const Timestamp now = kg.now();
    auto slot_values = [&](const SemanticUnit& u, const std::string& slot) -> std::vector<Term> {
        if (u.kind != UnitKind::statement) return {};
        const StatementSchema* schema = kg.schemas().by_class(u.unit_class);
        if (!schema || !schema->slot(slot)) return {};
        return extract_slots(*schema, *u.subject, kg.store().graph(*u.data_graph)).values[slot];
    };
    auto keep = [&](const SemanticUnit& u, const FacetFilter& f) {
        switch (f.kind) {
            case FacetFilter::Kind::unit_class: return u.unit_class == *f.iri;
            case FacetFilter::Kind::category: return u.category == f.category;
            case FacetFilter::Kind::negated: return u.negated == f.flag;
            case FacetFilter::Kind::slot_range: {
                if (f.iri && u.unit_class != *f.iri) return false;
                for (const auto& v : slot_values(u, f.slot))
                    if (auto n = numeric_value(v); n && f.range->contains(*n)) return true;
                return false;
            }
            case FacetFilter::Kind::slot_class: {
                for (const auto& v : slot_values(u, f.slot))
                    if (const Iri* r = v.as_resource(); r && classes_of(kg, *r).count(*f.iri)) return true;
                return false;
            }
            case FacetFilter::Kind::created_within: return within(u.metadata.created, now, bucket_span(f.bucket));
        }
        return false;
    };
    std::vector<Iri> out;
    for (const auto& g : units) {
        const SemanticUnit& u = reg.get(g);
        if (std::all_of(filters.begin(), filters.end(), [&](const FacetFilter& f) { return keep(u, f); }))
            out.push_back(g);
    }
    return out;
}

json facets_to_json(const FacetMap& f) {
    json classes = json::object(), cats = json::object(), neg = json::object(), created = json::object();
    for (const auto& [c, n] : f.unit_classes) classes[c.str()] = n;
    for (const auto& [c, n] : f.categories) cats[std::string(to_string(c))] = n;
    for (const auto& [b, n] : f.negated) neg[b ? "true" : "false"] = n;
    for (const auto& [b, n] : f.created) created[std::string(to_string(b))] = n;
    json slots = json::array();
    for (const auto& s : f.slots) {
        json rc = json::object();
        for (const auto& [c, n] : s.resource_classes) rc[c.str()] = n;
        slots.push_back({{"unit_class", s.unit_class.str()},
                         {"slot", s.slot},
                         {"min", decimal_json(s.min)},
                         {"max", decimal_json(s.max)},
                         {"resource_classes", rc}});
    }
    return {{"unit_classes", classes}, {"categories", cats}, {"negated", neg}, {"slots", slots}, {"created", created}};
}

FacetFilter facet_filter_from_json(const json& j) {
    try {
        if (j.contains("unit_class") && !j.contains("slot"))
            return {FacetFilter::Kind::unit_class, vocab::expand(j.at("unit_class").get<std::string>())};
        if (j.contains("category"))
            return {FacetFilter::Kind::category, std::nullopt,
                    parse_statement_category(j.at("category").get<std::string>())};
        if (j.contains("negated"))
            return {FacetFilter::Kind::negated, std::nullopt, std::nullopt, j.at("negated").get<bool>()};
        if (j.contains("created_within")) {
            FacetFilter f{FacetFilter::Kind::created_within};
            f.bucket = parse_time_bucket(j.at("created_within").get<std::string>());
            return f;
        }
        if (j.contains("slot")) {
            FacetFilter f{FacetFilter::Kind::slot_range};
            f.slot = j.at("slot").get<std::string>();
            if (j.contains("unit_class")) f.iri = vocab::expand(j.at("unit_class").get<std::string>());
            if (j.contains("class")) {
                f.kind = FacetFilter::Kind::slot_class;
                f.iri = vocab::expand(j.at("class").get<std::string>());
                return f;
            }
            const json& r = j.at("range");
            auto bound = [](const json& b) {
                auto d = Decimal::parse(b.is_string() ? b.get<std::string>() : b.dump());
                if (!d) throw Error(ErrorCode::format, "facet range bound is not a number");
                return *d;
            };
            f.range = NumericRange{bound(r.at(0)), bound(r.at(1))};
            return f;
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::format, std::string("malformed facet filter: ") + e.what());
    }
    throw Error(ErrorCode::format, "malformed facet filter: " + j.dump());
}

// ---------------------------------------------------------------------------

std::vector<std::pair<Iri, std::size_t>> hotspots(const KnowledgeGraph& kg, std::optional<std::chrono::seconds> window) {
    const auto& reg = kg.registry();
    const Timestamp now = kg.now();
    std::map<Iri, std::size_t> counts;
    for (const auto& g : active_statement_units(reg)) {
        const SemanticUnit& u = reg.get(g);
        if (!within(u.metadata.created, now, window) && !within(u.metadata.last_updated, now, window)) continue;
        std::set<Iri> classes;
        for (const auto& r : mentioned_resources(kg, u))
            for (const auto& c : classes_of(kg, r)) classes.insert(c);
        for (const auto& c : classes) counts[c]++;
    }
    return top_k(counts, counts.size());
}

// ---------------------------------------------------------------------------

std::string Table::to_csv() const {
    auto line = [](const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += '"';
            for (char c : cells[i]) {
                if (c == '"') out += '"';
                out += c;
            }
            out += '"';
        }
        return out + "\n";
    };
    std::string out = line(header);
    for (const auto& r : rows) out += line(r);
    return out;
}

Table tabulate(const KnowledgeGraph& kg, const std::vector<Iri>& units, const std::optional<Iri>& unit_class) {
    const auto& reg = kg.registry();
    const Iri& layer = reg.layer_graph();
    auto statement_header = [&](const Iri& cls) {
        std::vector<std::string> h{"subject"};
        if (const StatementSchema* s = kg.schemas().by_class(cls)) {
            for (const auto& slot : s->slots)
                if (slot.display) h.push_back(slot.name);
        } else {
            h.insert(h.end(), {"predicate", "object"});
        }
        return h;
    };
    Table t;
    if (units.empty()) {
        if (unit_class) t.header = statement_header(*unit_class);
        return t;
    }
    const UnitKind kind = reg.get(units.front()).kind;
    for (const auto& g : units) {
        const SemanticUnit& u = reg.get(g);
        if (u.kind != kind || (kind != UnitKind::statement && kind != UnitKind::item))
            throw Error(ErrorCode::type_error, "tables take statement units of one class or item units");
        if (kind == UnitKind::statement && u.unit_class != reg.get(units.front()).unit_class)
            throw Error(ErrorCode::type_error, "statement units of different classes cannot share a table");
    }
    auto join = [](const std::vector<std::string>& parts) {
        std::string s;
        for (const auto& p : parts) s += (s.empty() ? "" : "; ") + p;
        return s;
    };

    if (kind == UnitKind::statement) {
        const Iri cls = reg.get(units.front()).unit_class;
        t.header = statement_header(cls);
        const StatementSchema* schema = kg.schemas().by_class(cls);
        for (const auto& g : units) {
            const SemanticUnit& u = reg.get(g);
            std::vector<std::string> row{display_label(kg.store(), layer, *u.subject)};
            auto data = kg.store().graph(*u.data_graph);
            if (schema) {
                auto ex = extract_slots(*schema, *u.subject, data);
                for (const auto& slot : schema->slots) {
                    if (!slot.display) continue;
                    std::vector<std::string> cells;
                    for (const auto& v : ex.values[slot.name]) cells.push_back(display_label(kg.store(), layer, v));
                    row.push_back(join(cells));
                }
            } else {
                std::vector<std::string> ps, os;
                for (const auto& tr : data) {
                    ps.push_back(display_label(kg.store(), layer, tr.predicate));
                    os.push_back(display_label(kg.store(), layer, tr.object));
                }
                row.push_back(join(ps));
                row.push_back(join(os));
            }
            t.rows.push_back(std::move(row));
        }
        return t;
    }

    t.header.push_back("statement class");
    std::set<Iri> classes;
    for (const auto& item : units) {
        t.header.push_back(render_unit_label(reg, kg.schemas(), item));
        for (const auto& s : reg.get(item).members) classes.insert(reg.get(s).unit_class);
    }
    for (const auto& cls : classes) {
        std::vector<std::string> row{std::string(cls.local_name())};
        if (const StatementSchema* s = kg.schemas().by_class(cls); s && !s->description.empty())
            row.front() = s->description;
        else if (auto p = generic_predicate(cls))
            row.front() = display_label(kg.store(), layer, *p);
        for (const auto& item : units) {
            std::vector<std::string> cells;
            for (const auto& s : reg.get(item).members)
                if (reg.get(s).unit_class == cls && !reg.superseded(s))
                    cells.push_back(render_unit_label(reg, kg.schemas(), s));
            row.push_back(join(cells));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

json table_to_json(const Table& t) { return {{"header", t.header}, {"rows", t.rows}}; }

json mindmap_to_json(const MindMapGraph& g) {
    json nodes = json::array(), edges = json::array();
    for (const auto& n : g.nodes) {
        json j{{"id", n.id}, {"label", n.label}};
        j["resource"] = n.term && n.term->is_resource() ? json(n.term->resource().str()) : json(nullptr);
        nodes.push_back(j);
    }
    for (const auto& e : g.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
    return {{"nodes", nodes}, {"edges", edges}, {"negated", g.negated}};
}

}  // namespace semunit
