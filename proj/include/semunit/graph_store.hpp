#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "semunit/term.hpp"

namespace semunit {

// Unbound positions are wildcards.
struct QuadPattern {
    std::optional<Iri> subject;
    std::optional<Iri> predicate;
    std::optional<Term> object;
    std::optional<Iri> graph;
};

// Set of quads with secondary indexes. Not internally synchronized: callers
// follow the single-writer / many-readers contract (see KnowledgeGraph).
class GraphStore {
public:
    // Called after every effective insert (true) or erase (false).
    using Observer = std::function<void(const Quad&, bool inserted)>;

    GraphStore() = default;
    GraphStore(const GraphStore& other);
    GraphStore& operator=(const GraphStore& other);
    GraphStore(GraphStore&&) noexcept = default;
    GraphStore& operator=(GraphStore&&) noexcept = default;

    // Returns false when the quad was already present.
    bool insert(const Quad& quad);
    bool insert(const Triple& triple, const Iri& graph) { return insert(Quad{triple, graph}); }
    bool erase(const Quad& quad);

    bool contains(const Quad& quad) const { return quads_.count(quad) > 0; }
    std::size_t size() const noexcept { return quads_.size(); }
    bool empty() const noexcept { return quads_.empty(); }

    // Matching quads in (graph, subject, predicate, object) order.
    std::vector<Quad> match(const QuadPattern& pattern) const;
    // True if any quad matches; cheaper than match().
    bool exists(const QuadPattern& pattern) const;

    std::vector<Triple> graph(const Iri& graph) const;
    std::size_t graph_size(const Iri& graph) const;
    bool has_graph(const Iri& graph) const;
    std::vector<Iri> graphs() const;

    const std::set<Quad>& quads() const noexcept { return quads_; }

    void set_observer(Observer observer) { observer_ = std::move(observer); }

private:
    struct PtrLess {
        bool operator()(const Quad* a, const Quad* b) const { return *a < *b; }
    };
    using Bucket = std::set<const Quad*, PtrLess>;

    void index(const Quad* q);
    void unindex(const Quad* q);
    void rebuild_indexes();
    const Bucket* best_bucket(const QuadPattern& p) const;

    std::set<Quad> quads_;
    std::map<Iri, Bucket> by_graph_;
    std::map<Iri, Bucket> by_subject_;
    std::map<Iri, Bucket> by_predicate_;
    std::map<Iri, Bucket> by_object_;
    std::map<std::pair<Iri, Iri>, Bucket> by_subject_predicate_;
    std::map<std::pair<Iri, Iri>, Bucket> by_graph_subject_;
    Observer observer_;
};

bool matches(const QuadPattern& pattern, const Quad& quad);

}  // namespace semunit
