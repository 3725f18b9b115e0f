#include "semunit/knowledge_graph.hpp"

#include <boost/uuid/name_generator_sha1.hpp>
#include <boost/uuid/random_generator.hpp>
#include <boost/uuid/string_generator.hpp>
#include <boost/uuid/uuid_io.hpp>

#include "semunit/error.hpp"
#include "semunit/rdf_io.hpp"

namespace semunit {

namespace {

const boost::uuids::uuid& derive_namespace() {
    static const boost::uuids::uuid ns =
        boost::uuids::string_generator()("6f1c0e5a-3b0d-5c55-9a43-5e6d2a7c9b10");
    return ns;
}

}  // namespace

GupriMinter::GupriMinter(std::uint64_t seed, std::string prefix) : engine_(seed), prefix_(std::move(prefix)) {}

Iri GupriMinter::mint() {
    boost::uuids::basic_random_generator<std::mt19937_64> gen(engine_);
    return Iri(prefix_ + boost::uuids::to_string(gen()));
}

Iri GupriMinter::derive(std::string_view key) const {
    boost::uuids::name_generator_sha1 gen(derive_namespace());
    return Iri(prefix_ + boost::uuids::to_string(gen(key.data(), key.size())));
}

Timestamp system_now() {
    return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

KnowledgeGraph::KnowledgeGraph(GraphConfig config)
    : config_(std::move(config)),
      registry_(store_, config_.layer_graph),
      minter_(config_.seed, config_.gupri_prefix),
      clock_(system_now) {}

KnowledgeGraph::~KnowledgeGraph() { flush(); }

Iri KnowledgeGraph::mint_gupri() {
    for (;;) {
        Iri g = minter_.mint();
        if (registry_.contains(g) || store_.has_graph(g)) continue;
        if (store_.exists({.subject = g}) || store_.exists({.object = Term(g)})) continue;
        return g;
    }
}

UnitMetadata KnowledgeGraph::new_metadata() const {
    Timestamp t = now();
    return UnitMetadata{config_.creator, t, std::nullopt, t, std::nullopt, config_.license};
}

void KnowledgeGraph::open_log(const std::filesystem::path& path) {
    if (std::filesystem::exists(path)) {
        std::ifstream in(path, std::ios::binary);
        std::string line;
        std::size_t lineno = 0;
        store_.set_observer(nullptr);
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            bool erase = line.rfind("- ", 0) == 0;
            std::string_view body = erase ? std::string_view(line).substr(2) : std::string_view(line);
            std::vector<Quad> quads;
            try {
                quads = parse_rdf(body, RdfSyntax::nquads, config_.store_iri);
            } catch (const ParseError& e) {
                throw Error(ErrorCode::format, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
            }
            for (const auto& q : quads) erase ? store_.erase(q) : store_.insert(q);
        }
        registry_.rebuild_from_layer();
    }
    log_.open(path, std::ios::app | std::ios::binary);
    if (!log_) throw Error(ErrorCode::not_found, "cannot open store log " + path.string());
    store_.set_observer([this](const Quad& q, bool inserted) {
        if (!inserted) log_ << "- ";
        log_ << to_nquads(q) << '\n';
    });
}

void KnowledgeGraph::flush() {
    if (log_.is_open()) log_.flush();
}

}  // namespace semunit
