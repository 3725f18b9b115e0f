#include "semunit/compound.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "semunit/error.hpp"
#include "semunit/partition.hpp"
#include "semunit/validate.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

namespace {

bool is_derived(UnitKind kind) {
    return kind == UnitKind::item || kind == UnitKind::item_group || kind == UnitKind::granularity_tree ||
           kind == UnitKind::granular_item_group || kind == UnitKind::context;
}

std::string join_keys(const std::vector<Iri>& iris) {
    std::vector<std::string> keys;
    for (const auto& i : iris) keys.push_back(i.str());
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (const auto& k : keys) out += k + "\n";
    return out;
}

class UnionFind {
public:
    std::size_t add(const Iri& key) {
        auto [it, fresh] = index_.emplace(key, parent_.size());
        if (fresh) parent_.push_back(parent_.size());
        return it->second;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    std::size_t find(const Iri& key) { return find(add(key)); }
    void unite(const Iri& a, const Iri& b) {
        auto ra = find(a), rb = find(b);
        if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
    }

private:
    std::map<Iri, std::size_t> index_;
    std::vector<std::size_t> parent_;
};

// Removes a derived unit, first removing derived containers that hold it.
// Returns false when a user-made container still references it.
bool retire(KnowledgeGraph& kg, const Iri& gupri, std::vector<std::string>& diagnostics, std::size_t& count) {
    auto& reg = kg.registry();
    if (!reg.contains(gupri)) return true;
    for (const auto& c : reg.containers_of(gupri)) {
        if (!is_derived(reg.get(c).kind)) {
            diagnostics.push_back("kept stale " + std::string(to_string(reg.get(gupri).kind)) + " " + gupri.str() +
                                  ": still a member of " + c.str());
            return false;
        }
        if (!retire(kg, c, diagnostics, count)) return false;
    }
    reg.remove_unit(gupri);
    ++count;
    return true;
}

// Registers or refreshes a derived unit under a content-keyed GUPRI.
Iri upsert(KnowledgeGraph& kg, BuildResult& result, UnitKind kind, const Iri& unit_class, const std::string& key,
           std::vector<Iri> members, std::optional<Iri> subject = std::nullopt) {
    auto& reg = kg.registry();
    Iri gupri = kg.derive_gupri(key);
    if (const SemanticUnit* existing = reg.find(gupri)) {
        if (existing->kind != kind)
            throw Error(ErrorCode::conflict, "derived identifier " + gupri.str() + " already used");
        if (existing->members != members) {
            reg.replace_members(gupri, std::move(members), kg.now());
            ++result.updated;
        }
    } else {
        reg.register_unit(SemanticUnit{
            .gupri = gupri,
            .unit_class = unit_class,
            .kind = kind,
            .members = std::move(members),
            .subject = std::move(subject),
            .metadata = kg.new_metadata(),
        });
        ++result.created;
    }
    result.units.push_back(gupri);
    return gupri;
}

void retire_stale(KnowledgeGraph& kg, BuildResult& result, const std::vector<Iri>& candidates) {
    std::set<Iri> keep(result.units.begin(), result.units.end());
    for (const auto& g : candidates)
        if (!keep.count(g)) retire(kg, g, result.diagnostics, result.retired);
}

}  // namespace

std::vector<Iri> active_statement_units(const UnitRegistry& registry) {
    std::vector<Iri> out;
    for (const auto& g : registry.of_kind(UnitKind::statement))
        if (!registry.superseded(g)) out.push_back(g);
    return out;
}

bool is_about_unit(const SemanticUnit& unit, const BuildConfig& config) {
    return config.is_about_classes.count(unit.unit_class) > 0 || unit.unit_class == generic_unit_class(vocab::is_about);
}

BuildResult build_item_units(KnowledgeGraph& kg) {
    auto& reg = kg.registry();
    std::map<Iri, std::vector<Iri>> by_subject;
    for (const auto& g : active_statement_units(reg)) by_subject[*reg.get(g).subject].push_back(g);
    BuildResult result;
    for (auto& [subject, members] : by_subject)
        upsert(kg, result, UnitKind::item, unit_kind_class(UnitKind::item), "item\n" + subject.str(),
               std::move(members), subject);
    retire_stale(kg, result, reg.of_kind(UnitKind::item));
    return result;
}

BuildResult build_item_group_units(KnowledgeGraph& kg) {
    auto& reg = kg.registry();
    std::map<Iri, Iri> item_by_subject;
    for (const auto& g : reg.of_kind(UnitKind::item)) item_by_subject.emplace(*reg.get(g).subject, g);

    UnionFind uf;
    for (const auto& [subject, item] : item_by_subject) {
        uf.add(subject);
        for (const auto& s : reg.get(item).members) {
            for (const auto& t : kg.store().graph(*reg.get(s).data_graph)) {
                const Iri* o = t.object.as_resource();
                if (o && *o != subject && item_by_subject.count(*o)) uf.unite(subject, *o);
            }
        }
    }
    std::map<std::size_t, std::vector<Iri>> components;  // subjects in lexicographic order
    for (const auto& [subject, _] : item_by_subject) components[uf.find(subject)].push_back(subject);

    BuildResult result;
    for (const auto& [_, subjects] : components) {
        if (subjects.size() < 2) continue;
        std::vector<Iri> members;
        for (const auto& s : subjects) members.push_back(item_by_subject.at(s));
        upsert(kg, result, UnitKind::item_group, unit_kind_class(UnitKind::item_group),
               "item-group\n" + join_keys(subjects), std::move(members));
    }
    retire_stale(kg, result, reg.of_kind(UnitKind::item_group));
    return result;
}

std::vector<std::pair<Iri, Iri>> relation_edges(const KnowledgeGraph& kg, const SemanticUnit& unit) {
    std::vector<std::pair<Iri, Iri>> out;
    if (!unit.data_graph || !unit.subject) return out;
    auto data = kg.store().graph(*unit.data_graph);
    if (const StatementSchema* schema = kg.schemas().by_class(unit.unit_class)) {
        auto ex = extract_slots(*schema, *unit.subject, data);
        for (const auto& slot : schema->slots) {
            if (slot.value_kind != ValueKind::resource) continue;
            for (const auto& v : ex.values[slot.name])
                if (const Iri* r = v.as_resource()) out.emplace_back(*unit.subject, *r);
        }
    } else {
        for (const auto& t : data)
            if (const Iri* r = t.object.as_resource(); r && t.subject == *unit.subject)
                out.emplace_back(t.subject, *r);
    }
    return out;
}

BuildResult build_granularity_tree_units(KnowledgeGraph& kg, const GranularityPerspective& perspective) {
    auto& reg = kg.registry();
    std::vector<std::pair<Iri, std::vector<std::pair<Iri, Iri>>>> units;
    UnionFind uf;
    for (const auto& g : active_statement_units(reg)) {
        const SemanticUnit& u = reg.get(g);
        if (u.unit_class != perspective.relation_class || u.negated) continue;
        auto edges = relation_edges(kg, u);
        if (edges.empty()) continue;
        for (const auto& [a, b] : edges) uf.unite(a, b);
        units.emplace_back(g, std::move(edges));
    }
    std::map<std::size_t, std::vector<std::size_t>> components;
    for (std::size_t i = 0; i < units.size(); ++i)
        components[uf.find(units[i].second.front().first)].push_back(i);

    BuildResult result;
    for (const auto& [_, idx] : components) {
        if (idx.size() < 2) continue;
        std::map<Iri, std::set<Iri>> parents;
        std::map<Iri, std::vector<std::pair<Iri, Iri>>> children;  // parent -> (child, unit)
        std::vector<Iri> unit_ids;
        for (auto i : idx) {
            unit_ids.push_back(units[i].first);
            for (const auto& [a, b] : units[i].second) {
                parents[a];
                parents[b].insert(a);
                children[a].emplace_back(b, units[i].first);
            }
        }
        std::string where = "component of " + std::to_string(idx.size()) + " units starting at " +
                            unit_ids.front().str();
        std::vector<Iri> roots;
        bool multi = false;
        for (const auto& [node, ps] : parents) {
            if (ps.empty()) roots.push_back(node);
            if (ps.size() > 1) multi = true;
        }
        if (multi) {
            result.diagnostics.push_back("multiple-parents: " + where);
            continue;
        }
        if (roots.size() != 1) {
            result.diagnostics.push_back("cycle: " + where);
            continue;
        }
        // Breadth-first member order from the root.
        std::vector<Iri> members;
        std::set<Iri> seen_units;
        std::vector<Iri> queue{roots.front()};
        std::set<Iri> visited{roots.front()};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            auto& kids = children[queue[q]];
            std::sort(kids.begin(), kids.end());
            for (const auto& [child, unit] : kids) {
                if (seen_units.insert(unit).second) members.push_back(unit);
                if (visited.insert(child).second) queue.push_back(child);
            }
        }
        if (visited.size() != parents.size()) {
            result.diagnostics.push_back("cycle: " + where);
            continue;
        }
        upsert(kg, result, UnitKind::granularity_tree, unit_kind_class(UnitKind::granularity_tree),
               "granularity-tree\n" + perspective.relation_class.str() + "\n" + join_keys(unit_ids),
               std::move(members));
    }
    std::vector<Iri> stale;
    for (const auto& g : reg.of_kind(UnitKind::granularity_tree)) {
        const auto& ms = reg.get(g).members;
        if (std::all_of(ms.begin(), ms.end(),
                        [&](const Iri& m) { return reg.get(m).unit_class == perspective.relation_class; }))
            stale.push_back(g);
    }
    retire_stale(kg, result, stale);
    return result;
}

SemanticUnit build_granular_item_group(KnowledgeGraph& kg, const Iri& tree_unit, std::vector<std::string>* diagnostics) {
    auto& reg = kg.registry();
    const SemanticUnit& tree = reg.get(tree_unit);
    if (tree.kind != UnitKind::granularity_tree)
        throw Error(ErrorCode::type_error, "unit " + tree_unit.str() + " is not a granularity tree unit");
    std::vector<Iri> resources;
    std::set<Iri> seen;
    for (const auto& m : tree.members)
        for (const auto& [a, b] : relation_edges(kg, reg.get(m)))
            for (const auto& r : {a, b})
                if (seen.insert(r).second) resources.push_back(r);

    std::vector<Iri> members{tree_unit};
    for (const auto& r : resources) {
        Iri item = kg.derive_gupri("item\n" + r.str());
        if (reg.contains(item)) members.push_back(item);
        else if (diagnostics) diagnostics->push_back("no item unit for " + r.str());
    }
    BuildResult scratch;
    Iri g = upsert(kg, scratch, UnitKind::granular_item_group, unit_kind_class(UnitKind::granular_item_group),
                   "granular-item-group\n" + tree_unit.str(), std::move(members));
    return reg.get(g);
}

BuildResult build_context_units(KnowledgeGraph& kg, const BuildConfig& config) {
    auto& reg = kg.registry();
    UnionFind uf;
    std::vector<std::pair<Iri, Iri>> unit_anchor;
    for (const auto& g : active_statement_units(reg)) {
        const SemanticUnit& u = reg.get(g);
        if (is_about_unit(u, config)) continue;
        const Iri& anchor = *u.subject;
        uf.add(anchor);
        for (const auto& t : kg.store().graph(*u.data_graph)) {
            uf.unite(anchor, t.subject);
            if (const Iri* o = t.object.as_resource()) uf.unite(anchor, *o);
        }
        unit_anchor.emplace_back(g, anchor);
    }
    std::map<std::size_t, std::vector<Iri>> components;
    for (const auto& [g, anchor] : unit_anchor) components[uf.find(anchor)].push_back(g);

    BuildResult result;
    for (auto& [_, members] : components) {
        std::sort(members.begin(), members.end());
        std::string key = "context\n" + join_keys(members);
        upsert(kg, result, UnitKind::context, unit_kind_class(UnitKind::context), key, std::move(members));
    }
    retire_stale(kg, result, reg.of_kind(UnitKind::context));
    return result;
}

std::map<UnitKind, BuildResult> build_all(KnowledgeGraph& kg, const BuildConfig& config) {
    std::map<UnitKind, BuildResult> out;
    out[UnitKind::item] = build_item_units(kg);
    out[UnitKind::item_group] = build_item_group_units(kg);
    auto& trees = out[UnitKind::granularity_tree];
    for (const auto& p : config.perspectives) {
        auto r = build_granularity_tree_units(kg, p);
        trees.units.insert(trees.units.end(), r.units.begin(), r.units.end());
        trees.created += r.created;
        trees.updated += r.updated;
        trees.retired += r.retired;
        trees.diagnostics.insert(trees.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
    }
    auto& groups = out[UnitKind::granular_item_group];
    for (const auto& t : trees.units) {
        auto before = kg.registry().size();
        auto u = build_granular_item_group(kg, t, &groups.diagnostics);
        if (kg.registry().size() > before) ++groups.created;
        groups.units.push_back(u.gupri);
    }
    retire_stale(kg, groups, kg.registry().of_kind(UnitKind::granular_item_group));
    out[UnitKind::context] = build_context_units(kg, config);
    return out;
}

SemanticUnit make_standard_information_unit(KnowledgeGraph& kg, const StandardInformationDefinition& def,
                                            std::vector<Iri> members) {
    if (def.required.empty())
        throw Error(ErrorCode::validation, "standard information " + def.gupri.str() + " has no requirements");
    if (members.empty()) throw Error(ErrorCode::validation, "standard information unit needs members");
    auto& reg = kg.registry();
    std::map<Iri, std::size_t> counts;
    for (const auto& m : members) {
        if (!reg.contains(m)) throw Error(ErrorCode::integrity, "dangling member " + m.str());
        for (const auto& s : reg.statement_closure(m)) counts[reg.get(s).unit_class]++;
    }
    std::vector<std::string> gaps;
    for (const auto& [cls, min] : def.required) {
        std::size_t have = counts.count(cls) ? counts.at(cls) : 0;
        if (have < min)
            gaps.push_back(cls.str() + ": need " + std::to_string(min) + ", found " + std::to_string(have));
    }
    if (!gaps.empty())
        throw Error(ErrorCode::validation, "incomplete " + def.label + ": " + gaps.front(), gaps);
    SemanticUnit u{
        .gupri = kg.mint_gupri(),
        .unit_class = def.gupri,
        .kind = UnitKind::standard_information,
        .members = std::move(members),
        .metadata = kg.new_metadata(),
    };
    reg.register_unit(u);
    return u;
}

std::string_view to_string(InferenceKind kind) {
    switch (kind) {
        case InferenceKind::deduction: return "deduction";
        case InferenceKind::induction: return "induction";
        case InferenceKind::abduction: return "abduction";
    }
    return "deduction";
}

InferenceKind parse_inference_kind(std::string_view text) {
    for (auto k : {InferenceKind::deduction, InferenceKind::induction, InferenceKind::abduction})
        if (to_string(k) == text) return k;
    throw Error(ErrorCode::validation, "unknown inference kind '" + std::string(text) + "'");
}

SemanticUnit make_logical_argument_unit(KnowledgeGraph& kg, const std::vector<Iri>& members, InferenceKind kind) {
    if (members.size() != 3)
        throw Error(ErrorCode::validation, "arity: a logical argument takes two premises and one conclusion, got " +
                                               std::to_string(members.size()) + " members");
    auto& reg = kg.registry();
    for (const auto& m : members)
        if (reg.get(m).kind != UnitKind::statement)
            throw Error(ErrorCode::type_error, "unit " + m.str() + " is not a statement unit");
    static const char* classes[] = {"DeductionUnit", "InductionUnit", "AbductionUnit"};
    SemanticUnit u{
        .gupri = kg.mint_gupri(),
        .unit_class = vocab::su(classes[static_cast<int>(kind)]),
        .kind = UnitKind::logical_argument,
        .members = members,
        .metadata = kg.new_metadata(),
        .roles = {{"premise", members[0]}, {"premise", members[1]}, {"conclusion", members[2]}},
    };
    reg.register_unit(u);
    return u;
}

SemanticUnit make_dataset_unit(KnowledgeGraph& kg, std::vector<Iri> ordered_members) {
    if (ordered_members.empty()) throw Error(ErrorCode::validation, "a dataset unit needs at least one member");
    SemanticUnit u{
        .gupri = kg.mint_gupri(),
        .unit_class = unit_kind_class(UnitKind::dataset),
        .kind = UnitKind::dataset,
        .members = std::move(ordered_members),
        .metadata = kg.new_metadata(),
    };
    kg.registry().register_unit(u);
    return u;
}

BuildConfig parse_build_config(std::string_view text, const std::string& source) {
    BuildConfig cfg;
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::Exception& e) {
        throw Error(ErrorCode::format, source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    if (!root || root.IsNull()) return cfg;
    auto fail = [&](const YAML::Node& n, const std::string& msg) {
        throw Error(ErrorCode::format, source + ":" + std::to_string(n.Mark().line + 1) + ": " + msg);
    };
    auto iri = [&](const YAML::Node& n, const std::string& field) {
        if (!n || !n.IsScalar()) fail(n ? n : root, field + ": expected an IRI");
        try {
            return vocab::expand(n.as<std::string>());
        } catch (const Error&) {
            fail(n, field + ": malformed IRI");
        }
        return Iri("urn:unreachable");
    };
    try {
        for (const auto& kv : root) {
            auto key = kv.first.as<std::string>();
            if (key != "is_about" && key != "perspectives" && key != "standard_information")
                fail(kv.first, key + ": unknown field");
        }
        if (auto n = root["is_about"])
            for (const auto& c : n) cfg.is_about_classes.insert(iri(c, "is_about"));
        if (auto n = root["perspectives"]) {
            for (const auto& p : n) {
                GranularityPerspective gp{iri(p["relation"], "perspectives.relation"),
                                          p["label"] ? p["label"].as<std::string>() : ""};
                if (!p["partial_order"] || !p["partial_order"].as<bool>())
                    fail(p, "perspectives.partial_order: relation must be declared a partial order");
                cfg.perspectives.push_back(std::move(gp));
            }
        }
        if (auto n = root["standard_information"]) {
            for (const auto& d : n) {
                StandardInformationDefinition def{iri(d["class"], "standard_information.class"), {},
                                                  d["label"] ? d["label"].as<std::string>() : ""};
                if (auto req = d["requires"]) {
                    for (const auto& kv : req)
                        def.required[iri(kv.first, "standard_information.requires")] = kv.second.as<std::size_t>();
                }
                if (def.required.empty()) fail(d, "standard_information.requires: empty requirement set");
                cfg.standard_information.push_back(std::move(def));
            }
        }
    } catch (const YAML::Exception& e) {
        throw Error(ErrorCode::format, source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    return cfg;
}

BuildConfig load_build_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::not_found, "cannot read build config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_build_config(buf.str(), path.string());
}

}  // namespace semunit
