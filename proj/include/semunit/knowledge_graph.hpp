#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <random>
#include <shared_mutex>
#include <string>

#include "semunit/graph_store.hpp"
#include "semunit/registry.hpp"
#include "semunit/schema.hpp"
#include "semunit/unit.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

// Mints GUPRIs. Random ones are UUIDv4 drawn from a seeded engine; derived
// ones are UUIDv5 over a content key so rebuilding yields the same identifier.
class GupriMinter {
public:
    explicit GupriMinter(std::uint64_t seed = 0, std::string prefix = "urn:uuid:");

    Iri mint();
    Iri derive(std::string_view key) const;
    const std::string& prefix() const noexcept { return prefix_; }
    void reseed(std::uint64_t seed) { engine_.seed(seed); }

private:
    std::mt19937_64 engine_;
    std::string prefix_;
};

struct GraphConfig {
    Iri layer_graph = vocab::default_layer_graph;
    Iri store_iri = vocab::default_store_iri;
    std::string gupri_prefix = "urn:uuid:";
    Iri creator = vocab::default_creator;
    Iri license = vocab::default_license;
    std::uint64_t seed = 0;
};

using Clock = std::function<Timestamp()>;

Timestamp system_now();

// Store, unit registry, schema registry and identifier minting bundled
// together. Readers take shared_lock(mutex()), writers unique_lock.
class KnowledgeGraph {
public:
    explicit KnowledgeGraph(GraphConfig config = {});
    ~KnowledgeGraph();

    KnowledgeGraph(const KnowledgeGraph&) = delete;
    KnowledgeGraph& operator=(const KnowledgeGraph&) = delete;

    GraphStore& store() noexcept { return store_; }
    const GraphStore& store() const noexcept { return store_; }
    UnitRegistry& registry() noexcept { return registry_; }
    const UnitRegistry& registry() const noexcept { return registry_; }
    SchemaRegistry& schemas() noexcept { return schemas_; }
    const SchemaRegistry& schemas() const noexcept { return schemas_; }
    const GraphConfig& config() const noexcept { return config_; }
    GupriMinter& minter() noexcept { return minter_; }

    // Fresh identifier not yet used as a unit, graph, subject or object.
    Iri mint_gupri();
    Iri derive_gupri(std::string_view key) const { return minter_.derive(key); }

    Timestamp now() const { return clock_(); }
    void set_clock(Clock clock) { clock_ = std::move(clock); }
    UnitMetadata new_metadata() const;

    // Replays the append-only quad log at path (if present), rebuilds the
    // registry from the layer graph and appends every later change.
    void open_log(const std::filesystem::path& path);
    void flush();

    std::shared_mutex& mutex() const noexcept { return mutex_; }

private:
    GraphConfig config_;
    GraphStore store_;
    UnitRegistry registry_;
    SchemaRegistry schemas_;
    GupriMinter minter_;
    Clock clock_;
    std::ofstream log_;
    mutable std::shared_mutex mutex_;
};

}  // namespace semunit
