#pragma once

#include <set>
#include <vector>

#include <nlohmann/json.hpp>

#include "semunit/term.hpp"
#include "semunit/unit.hpp"

namespace semunit {

// {"iri": ...} | {"literal": ..., "datatype": ..., "language": ...}
nlohmann::json term_to_json(const Term& t);
// Also accepts a bare string as an IRI (CURIEs expanded).
Term term_from_json(const nlohmann::json& j);
nlohmann::json triple_to_json(const Triple& t);
nlohmann::json triples_to_json(const std::vector<Triple>& triples);
nlohmann::json triples_to_json(const std::set<Triple>& triples);
nlohmann::json metadata_to_json(const UnitMetadata& md);
nlohmann::json unit_to_json(const SemanticUnit& u);

}  // namespace semunit
