#include "semunit/registry.hpp"

#include <algorithm>
#include <sstream>

#include "semunit/error.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

namespace {

std::vector<Iri> to_vector(const std::set<Iri>& s) { return {s.begin(), s.end()}; }

template <class Map, class Key>
std::vector<Iri> lookup(const Map& map, const Key& key) {
    auto it = map.find(key);
    return it == map.end() ? std::vector<Iri>{} : to_vector(it->second);
}

Term timestamp_literal(Timestamp t) { return Literal(format_rfc3339(t), vocab::xsd_date_time); }

void add_mentions(const Triple& t, std::set<Iri>& out) {
    out.insert(t.subject);
    if (auto r = t.object.as_resource()) out.insert(*r);
}

}  // namespace

UnitRegistry::UnitRegistry(GraphStore& store, Iri layer_graph)
    : store_(store), layer_graph_(std::move(layer_graph)) {}

void UnitRegistry::check_shape(const SemanticUnit& u) const {
    auto fail = [&](const std::string& msg) {
        throw Error(ErrorCode::integrity, "unit " + u.gupri.str() + ": " + msg);
    };
    if (u.kind == UnitKind::statement) {
        if (!u.data_graph) fail("statement unit without data graph");
        if (!u.members.empty()) fail("statement unit with members");
        if (*u.data_graph == layer_graph_) fail("data graph may not be the semantic-units layer");
    } else if (u.kind == UnitKind::question) {
        if (u.data_graph || !u.members.empty()) fail("question unit with data graph or members");
    } else {
        if (u.members.empty()) fail("compound unit needs at least one member");
        if (u.data_graph) fail("compound unit may not own a data graph");
    }
    if (u.metadata.last_updated < u.metadata.created) fail("last_updated precedes created");
    for (const auto& m : u.members) {
        if (m == u.gupri) fail("unit may not contain itself");
        if (!contains(m)) fail("dangling member " + m.str());
    }
    for (const auto& [role, target] : u.roles) {
        if (role != "premise" && role != "conclusion") fail("unknown role '" + role + "'");
        if (!contains(target)) fail("dangling role target " + target.str());
    }
}

void UnitRegistry::register_unit(SemanticUnit unit) {
    if (contains(unit.gupri)) throw Error(ErrorCode::conflict, "duplicate gupri " + unit.gupri.str());
    check_shape(unit);
    if (unit.data_graph) {
        if (auto it = graph_owner_.find(*unit.data_graph); it != graph_owner_.end())
            throw Error(ErrorCode::conflict, "graph " + unit.data_graph->str() + " already owned by " +
                                                 it->second.str());
    }
    if (unit.revises && !contains(*unit.revises))
        throw Error(ErrorCode::integrity, "revised unit " + unit.revises->str() + " is not registered");
    write_layer(unit);
    index_unit(unit);
    Iri key = unit.gupri;
    units_.emplace(std::move(key), std::move(unit));
}

void UnitRegistry::remove_unit(const Iri& gupri, bool erase_data_graph) {
    auto it = units_.find(gupri);
    if (it == units_.end()) throw Error(ErrorCode::not_found, "unknown unit " + gupri.str());
    if (auto c = containers_.find(gupri); c != containers_.end() && !c->second.empty())
        throw Error(ErrorCode::integrity, "unit " + gupri.str() + " is still a member of " +
                                              c->second.begin()->str());
    for (const auto& [g, u] : units_) {
        for (const auto& [role, target] : u.roles)
            if (target == gupri)
                throw Error(ErrorCode::integrity, "unit " + gupri.str() + " is referenced by " + g.str());
    }
    SemanticUnit unit = it->second;
    erase_layer(unit);
    unindex_unit(unit);
    units_.erase(it);
    if (erase_data_graph && unit.data_graph) {
        for (const auto& t : store_.graph(*unit.data_graph)) store_.erase(Quad{t, *unit.data_graph});
    }
}

void UnitRegistry::replace_members(const Iri& gupri, std::vector<Iri> members, Timestamp updated) {
    auto it = units_.find(gupri);
    if (it == units_.end()) throw Error(ErrorCode::not_found, "unknown unit " + gupri.str());
    SemanticUnit next = it->second;
    next.members = std::move(members);
    next.metadata.last_updated = std::max(updated, next.metadata.created);
    check_shape(next);
    for (const auto& m : next.members) {
        if (m == gupri || member_closure(m).count(gupri))
            throw Error(ErrorCode::integrity, "membership cycle through " + m.str());
    }
    erase_layer(it->second);
    unindex_unit(it->second);
    it->second = std::move(next);
    write_layer(it->second);
    index_unit(it->second);
}

const SemanticUnit* UnitRegistry::find(const Iri& gupri) const {
    auto it = units_.find(gupri);
    return it == units_.end() ? nullptr : &it->second;
}

const SemanticUnit& UnitRegistry::get(const Iri& gupri) const {
    if (auto u = find(gupri)) return *u;
    throw Error(ErrorCode::not_found, "unknown unit " + gupri.str());
}

std::vector<const SemanticUnit*> UnitRegistry::all() const {
    std::vector<const SemanticUnit*> out;
    out.reserve(units_.size());
    for (const auto& [_, u] : units_) out.push_back(&u);
    return out;
}

std::vector<Iri> UnitRegistry::of_class(const Iri& unit_class) const { return lookup(by_class_, unit_class); }
std::vector<Iri> UnitRegistry::of_kind(UnitKind kind) const { return lookup(by_kind_, kind); }
std::vector<Iri> UnitRegistry::with_subject(const Iri& subject) const { return lookup(by_subject_, subject); }
std::vector<Iri> UnitRegistry::containers_of(const Iri& member) const { return lookup(containers_, member); }
std::vector<Iri> UnitRegistry::statements_mentioning(const Iri& resource) const {
    return lookup(mentions_, resource);
}

std::vector<Iri> UnitRegistry::unit_classes() const {
    std::vector<Iri> out;
    for (const auto& [c, s] : by_class_)
        if (!s.empty()) out.push_back(c);
    return out;
}

bool UnitRegistry::superseded(const Iri& gupri) const {
    auto it = revised_by_.find(gupri);
    return it != revised_by_.end() && !it->second.empty();
}

std::set<Iri> UnitRegistry::member_closure(const Iri& gupri) const {
    std::set<Iri> seen;
    std::vector<Iri> stack{gupri};
    while (!stack.empty()) {
        Iri cur = stack.back();
        stack.pop_back();
        const SemanticUnit& u = get(cur);
        for (const auto& m : u.members)
            if (seen.insert(m).second) stack.push_back(m);
    }
    return seen;
}

std::set<Iri> UnitRegistry::statement_closure(const Iri& gupri) const {
    std::set<Iri> out;
    const SemanticUnit& root = get(gupri);
    if (root.kind == UnitKind::statement) out.insert(gupri);
    for (const auto& m : member_closure(gupri))
        if (get(m).kind == UnitKind::statement) out.insert(m);
    return out;
}

std::set<Triple> UnitRegistry::merged_data_graph(const Iri& gupri) const {
    std::set<Triple> out;
    for (const auto& s : statement_closure(gupri)) {
        const auto& u = get(s);
        for (auto& t : store_.graph(*u.data_graph)) out.insert(std::move(t));
    }
    return out;
}

std::map<UnitKind, std::vector<Iri>> UnitRegistry::units_containing(const Iri& resource) const {
    std::set<Iri> hits;
    std::vector<Iri> stack = statements_mentioning(resource);
    for (const auto& s : stack) hits.insert(s);
    while (!stack.empty()) {
        Iri cur = stack.back();
        stack.pop_back();
        for (const auto& c : containers_of(cur))
            if (hits.insert(c).second) stack.push_back(c);
    }
    std::map<UnitKind, std::vector<Iri>> out;
    for (const auto& g : hits) out[get(g).kind].push_back(g);
    return out;
}

void UnitRegistry::declare_kind(const Iri& resource, ResourceKind kind) {
    auto it = kinds_.find(resource);
    if (it != kinds_.end()) {
        if (it->second == kind) return;
        throw Error(ErrorCode::conflict, "resource " + resource.str() + " already declared as " +
                                             std::string(to_string(it->second)));
    }
    kinds_.emplace(resource, kind);
    store_.insert(Quad{Triple{resource, vocab::resource_kind, resource_kind_class(kind)}, layer_graph_});
}

ResourceKind UnitRegistry::kind_of(const Iri& resource) const {
    if (auto it = kinds_.find(resource); it != kinds_.end()) return it->second;
    if (contains(resource)) return ResourceKind::semantic_unit;
    return ResourceKind::named_individual;
}

std::vector<Triple> UnitRegistry::layer_triples(const SemanticUnit& u) const {
    std::vector<Triple> out;
    const Iri& g = u.gupri;
    Iri kind_class = unit_kind_class(u.kind);
    out.push_back({g, vocab::instance_of, u.unit_class});
    if (kind_class != u.unit_class) out.push_back({g, vocab::instance_of, kind_class});
    if (u.category) out.push_back({g, vocab::instance_of, category_class(*u.category)});
    if (u.negated) out.push_back({g, vocab::instance_of, vocab::negation_unit});
    if (u.data_graph) out.push_back({g, vocab::has_data_graph, *u.data_graph});
    if (!u.members.empty()) {
        std::string seq;
        for (const auto& m : u.members) {
            out.push_back({g, vocab::has_member, m});
            if (!seq.empty()) seq.push_back(' ');
            seq += m.str();
        }
        out.push_back({g, vocab::member_sequence, Literal(seq)});
    }
    if (u.subject) out.push_back({g, vocab::has_subject, *u.subject});
    if (u.schema_ref) out.push_back({g, vocab::has_schema, *u.schema_ref});
    if (u.logic_framework) out.push_back({g, vocab::logic_framework, Literal(*u.logic_framework)});
    if (u.revises) out.push_back({g, vocab::revises, *u.revises});
    for (const auto& [role, target] : u.roles)
        out.push_back({g, role == "premise" ? vocab::has_premise : vocab::has_conclusion, target});
    if (u.question_spec) out.push_back({g, vocab::question_spec, Literal(*u.question_spec)});
    const auto& md = u.metadata;
    out.push_back({g, vocab::meta_creator, md.creator});
    out.push_back({g, vocab::meta_created, timestamp_literal(md.created)});
    if (md.contributor) out.push_back({g, vocab::meta_contributor, *md.contributor});
    out.push_back({g, vocab::meta_last_updated, timestamp_literal(md.last_updated)});
    if (md.author) out.push_back({g, vocab::meta_author, *md.author});
    out.push_back({g, vocab::meta_license, md.license});
    return out;
}

void UnitRegistry::write_layer(const SemanticUnit& u) {
    for (const auto& t : layer_triples(u)) store_.insert(Quad{t, layer_graph_});
}

void UnitRegistry::erase_layer(const SemanticUnit& u) {
    for (const auto& t : layer_triples(u)) store_.erase(Quad{t, layer_graph_});
}

void UnitRegistry::index_unit(const SemanticUnit& u) {
    by_class_[u.unit_class].insert(u.gupri);
    by_kind_[u.kind].insert(u.gupri);
    if (u.subject) by_subject_[*u.subject].insert(u.gupri);
    for (const auto& m : u.members) containers_[m].insert(u.gupri);
    if (u.revises) revised_by_[*u.revises].insert(u.gupri);
    if (u.data_graph) {
        graph_owner_.insert_or_assign(*u.data_graph, u.gupri);
        std::set<Iri> mentioned;
        for (const auto& t : store_.graph(*u.data_graph)) add_mentions(t, mentioned);
        for (const auto& r : mentioned) mentions_[r].insert(u.gupri);
    }
}

void UnitRegistry::unindex_unit(const SemanticUnit& u) {
    auto drop = [&](auto& map, const auto& key) {
        auto it = map.find(key);
        if (it == map.end()) return;
        it->second.erase(u.gupri);
        if (it->second.empty()) map.erase(it);
    };
    drop(by_class_, u.unit_class);
    drop(by_kind_, u.kind);
    if (u.subject) drop(by_subject_, *u.subject);
    for (const auto& m : u.members) drop(containers_, m);
    if (u.revises) drop(revised_by_, *u.revises);
    if (u.data_graph) {
        graph_owner_.erase(*u.data_graph);
        for (auto it = mentions_.begin(); it != mentions_.end();) {
            it->second.erase(u.gupri);
            it = it->second.empty() ? mentions_.erase(it) : std::next(it);
        }
    }
}

SemanticUnit unit_from_description(const Iri& g, std::span<const Triple> triples) {
    auto fail = [](const Iri& g, const std::string& msg) {
        throw Error(ErrorCode::format, "unit description " + g.str() + ": " + msg);
    };
    std::vector<Iri> types;
    std::optional<UnitKind> kind;
    std::optional<StatementCategory> category;
    bool negated = false;
    std::optional<Iri> creator, license, contributor, author, data_graph, subject, schema, revises;
    std::optional<Timestamp> created, updated;
    std::optional<std::string> logic, seq, question;
    std::vector<Iri> members;
    std::vector<std::pair<std::string, Iri>> roles;
    for (const auto& t : triples) {
        const auto& p = t.predicate;
        auto res = [&]() -> const Iri& {
            if (!t.object.is_resource()) fail(g, "expected resource for " + p.str());
            return t.object.resource();
        };
        auto lit = [&]() -> const std::string& {
            if (!t.object.is_literal()) fail(g, "expected literal for " + p.str());
            return t.object.literal().lexical();
        };
        if (p == vocab::instance_of) {
            const Iri& c = res();
            bool handled = false;
            for (int k = 0; k <= static_cast<int>(UnitKind::question); ++k) {
                if (unit_kind_class(static_cast<UnitKind>(k)) == c) {
                    kind = static_cast<UnitKind>(k);
                    handled = true;
                }
            }
            for (int k = 0; k <= static_cast<int>(StatementCategory::universal); ++k) {
                if (category_class(static_cast<StatementCategory>(k)) == c) {
                    category = static_cast<StatementCategory>(k);
                    handled = true;
                }
            }
            if (c == vocab::negation_unit) {
                negated = true;
                handled = true;
            }
            if (!handled) types.push_back(c);
        } else if (p == vocab::has_data_graph) data_graph = res();
        else if (p == vocab::member_sequence) seq = lit();
        else if (p == vocab::has_member) members.push_back(res());
        else if (p == vocab::has_subject) subject = res();
        else if (p == vocab::has_schema) schema = res();
        else if (p == vocab::logic_framework) logic = lit();
        else if (p == vocab::revises) revises = res();
        else if (p == vocab::has_premise) roles.emplace_back("premise", res());
        else if (p == vocab::has_conclusion) roles.emplace_back("conclusion", res());
        else if (p == vocab::question_spec) question = lit();
        else if (p == vocab::meta_creator) creator = res();
        else if (p == vocab::meta_created) created = parse_rfc3339(lit());
        else if (p == vocab::meta_contributor) contributor = res();
        else if (p == vocab::meta_last_updated) updated = parse_rfc3339(lit());
        else if (p == vocab::meta_author) author = res();
        else if (p == vocab::meta_license) license = res();
    }
    if (!kind) fail(g, "no unit kind class");
    if (types.size() > 1) fail(g, "ambiguous unit class");
    if (!creator || !created || !updated || !license) fail(g, "incomplete metadata");
    if (seq) {
        std::vector<Iri> ordered;
        std::istringstream in(*seq);
        std::string item;
        while (in >> item) ordered.emplace_back(item);
        members = std::move(ordered);
    }
    if (*kind == UnitKind::logical_argument && members.size() == 3 && roles.size() == 3) {
        roles = {{"premise", members[0]}, {"premise", members[1]}, {"conclusion", members[2]}};
    }
    SemanticUnit u{
        .gupri = g,
        .unit_class = types.empty() ? unit_kind_class(*kind) : types.front(),
        .kind = *kind,
        .data_graph = data_graph,
        .members = std::move(members),
        .subject = subject,
        .metadata = UnitMetadata{*creator, *created, contributor, *updated, author, *license},
        .schema_ref = schema,
        .logic_framework = logic,
        .category = category,
        .negated = negated,
        .revises = revises,
        .roles = std::move(roles),
        .question_spec = question,
    };
    return u;
}

void UnitRegistry::rebuild_from_layer() {
    units_.clear();
    by_class_.clear();
    by_kind_.clear();
    by_subject_.clear();
    containers_.clear();
    mentions_.clear();
    revised_by_.clear();
    graph_owner_.clear();
    kinds_.clear();

    std::map<Iri, std::vector<Triple>> by_unit;
    for (const auto& t : store_.graph(layer_graph_)) {
        if (t.predicate == vocab::resource_kind) {
            if (auto k = t.object.is_resource() ? resource_kind_from_class(t.object.resource()) : std::nullopt)
                kinds_.emplace(t.subject, *k);
            continue;
        }
        by_unit[t.subject].push_back(t);
    }

    std::map<Iri, SemanticUnit> loaded;
    for (const auto& [g, triples] : by_unit) loaded.emplace(g, unit_from_description(g, triples));
    units_ = std::move(loaded);
    for (const auto& [_, u] : units_) {
        for (const auto& m : u.members)
            if (!units_.count(m))
                throw Error(ErrorCode::format, "layer entry " + u.gupri.str() + ": dangling member " + m.str());
        index_unit(u);
    }
}

}  // namespace semunit
