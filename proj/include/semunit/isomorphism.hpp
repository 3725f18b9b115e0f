#pragma once

#include <span>
#include <string>
#include <vector>

#include "semunit/term.hpp"

namespace semunit {

// Which IRIs were minted locally and may be renamed when comparing graphs.
// Everything else (schema, ontology and vocabulary terms) maps only to itself.
struct LocalIriPolicy {
    std::vector<std::string> prefixes{"urn:uuid:", "urn:su:", "urn:semunit:skolem:"};

    bool is_local(const Iri& iri) const;
};

// True iff a bijection between the local IRIs of a and b makes the two triple
// sets equal. Duplicate triples are ignored (set semantics).
bool graph_isomorphic(std::span<const Triple> a, std::span<const Triple> b,
                      const LocalIriPolicy& policy = {});

}  // namespace semunit
