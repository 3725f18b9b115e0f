#include "semunit/graph_store.hpp"

namespace semunit {

namespace {

template <class Map, class Key>
void add_to(Map& map, const Key& key, const Quad* q) {
    map[key].insert(q);
}

template <class Map, class Key>
void remove_from(Map& map, const Key& key, const Quad* q) {
    auto it = map.find(key);
    if (it == map.end()) return;
    it->second.erase(q);
    if (it->second.empty()) map.erase(it);
}

template <class Map, class Key>
auto lookup(const Map& map, const Key& key) -> const typename Map::mapped_type* {
    static const typename Map::mapped_type empty;
    auto it = map.find(key);
    return it == map.end() ? &empty : &it->second;
}

}  // namespace

bool matches(const QuadPattern& p, const Quad& q) {
    if (p.graph && *p.graph != q.graph) return false;
    if (p.subject && *p.subject != q.triple.subject) return false;
    if (p.predicate && *p.predicate != q.triple.predicate) return false;
    if (p.object && *p.object != q.triple.object) return false;
    return true;
}

GraphStore::GraphStore(const GraphStore& other) : quads_(other.quads_) { rebuild_indexes(); }

GraphStore& GraphStore::operator=(const GraphStore& other) {
    if (this != &other) {
        quads_ = other.quads_;
        observer_ = nullptr;
        rebuild_indexes();
    }
    return *this;
}

void GraphStore::rebuild_indexes() {
    by_graph_.clear();
    by_subject_.clear();
    by_predicate_.clear();
    by_object_.clear();
    by_subject_predicate_.clear();
    by_graph_subject_.clear();
    for (const auto& q : quads_) index(&q);
}

void GraphStore::index(const Quad* q) {
    const auto& t = q->triple;
    add_to(by_graph_, q->graph, q);
    add_to(by_subject_, t.subject, q);
    add_to(by_predicate_, t.predicate, q);
    if (auto r = t.object.as_resource()) add_to(by_object_, *r, q);
    add_to(by_subject_predicate_, std::make_pair(t.subject, t.predicate), q);
    add_to(by_graph_subject_, std::make_pair(q->graph, t.subject), q);
}

void GraphStore::unindex(const Quad* q) {
    const auto& t = q->triple;
    remove_from(by_graph_, q->graph, q);
    remove_from(by_subject_, t.subject, q);
    remove_from(by_predicate_, t.predicate, q);
    if (auto r = t.object.as_resource()) remove_from(by_object_, *r, q);
    remove_from(by_subject_predicate_, std::make_pair(t.subject, t.predicate), q);
    remove_from(by_graph_subject_, std::make_pair(q->graph, t.subject), q);
}

bool GraphStore::insert(const Quad& quad) {
    auto [it, inserted] = quads_.insert(quad);
    if (!inserted) return false;
    index(&*it);
    if (observer_) observer_(*it, true);
    return true;
}

bool GraphStore::erase(const Quad& quad) {
    auto it = quads_.find(quad);
    if (it == quads_.end()) return false;
    unindex(&*it);
    Quad copy = *it;
    quads_.erase(it);
    if (observer_) observer_(copy, false);
    return true;
}

const GraphStore::Bucket* GraphStore::best_bucket(const QuadPattern& p) const {
    if (p.graph && p.subject) return lookup(by_graph_subject_, std::make_pair(*p.graph, *p.subject));
    if (p.subject && p.predicate)
        return lookup(by_subject_predicate_, std::make_pair(*p.subject, *p.predicate));
    if (p.subject) return lookup(by_subject_, *p.subject);
    if (p.object && p.object->is_resource()) {
        const Bucket* by_obj = lookup(by_object_, p.object->resource());
        if (p.graph) {
            const Bucket* by_g = lookup(by_graph_, *p.graph);
            return by_g->size() < by_obj->size() ? by_g : by_obj;
        }
        return by_obj;
    }
    if (p.graph) return lookup(by_graph_, *p.graph);
    if (p.predicate) return lookup(by_predicate_, *p.predicate);
    return nullptr;
}

std::vector<Quad> GraphStore::match(const QuadPattern& pattern) const {
    std::vector<Quad> out;
    if (const Bucket* bucket = best_bucket(pattern)) {
        for (const Quad* q : *bucket)
            if (matches(pattern, *q)) out.push_back(*q);
    } else {
        out.assign(quads_.begin(), quads_.end());
    }
    return out;
}

bool GraphStore::exists(const QuadPattern& pattern) const {
    if (pattern.graph && pattern.subject && pattern.predicate && pattern.object)
        return contains(Quad{Triple{*pattern.subject, *pattern.predicate, *pattern.object}, *pattern.graph});
    if (const Bucket* bucket = best_bucket(pattern)) {
        for (const Quad* q : *bucket)
            if (matches(pattern, *q)) return true;
        return false;
    }
    return !quads_.empty();
}

std::vector<Triple> GraphStore::graph(const Iri& graph) const {
    std::vector<Triple> out;
    if (auto it = by_graph_.find(graph); it != by_graph_.end()) {
        out.reserve(it->second.size());
        for (const Quad* q : it->second) out.push_back(q->triple);
    }
    return out;
}

std::size_t GraphStore::graph_size(const Iri& graph) const {
    auto it = by_graph_.find(graph);
    return it == by_graph_.end() ? 0 : it->second.size();
}

bool GraphStore::has_graph(const Iri& graph) const { return by_graph_.count(graph) > 0; }

std::vector<Iri> GraphStore::graphs() const {
    std::vector<Iri> out;
    out.reserve(by_graph_.size());
    for (const auto& [g, _] : by_graph_) out.push_back(g);
    return out;
}

}  // namespace semunit
