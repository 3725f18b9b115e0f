#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semunit/term.hpp"

// Reserved vocabulary. data/vocabulary.yaml publishes the same table; a unit
// test keeps the two in sync.
namespace semunit::vocab {

inline constexpr std::string_view rdf_ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs_ns = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view xsd_ns = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view owl_ns = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view skos_ns = "http://www.w3.org/2004/02/skos/core#";
inline constexpr std::string_view dct_ns = "http://purl.org/dc/terms/";
inline constexpr std::string_view pav_ns = "http://purl.org/pav/";
inline constexpr std::string_view prov_ns = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view np_ns = "http://www.nanopub.org/nschema#";
inline constexpr std::string_view obo_ns = "http://purl.obolibrary.org/obo/";
inline constexpr std::string_view semunit_ns = "https://w3id.org/semunit/vocab#";
inline constexpr std::string_view generic_class_ns = "https://w3id.org/semunit/generic#";

Iri rdf(std::string_view local);
Iri rdfs(std::string_view local);
Iri xsd(std::string_view local);
Iri su(std::string_view local);

// rdf:type doubles as the instance-of predicate of the semantic-units layer.
extern const Iri instance_of;
extern const Iri rdfs_label;
extern const Iri skos_pref_label;

extern const Iri xsd_decimal;
extern const Iri xsd_integer;
extern const Iri xsd_double;
extern const Iri xsd_float;
extern const Iri xsd_boolean;
extern const Iri xsd_date_time;

// Layer predicates.
extern const Iri has_member;
extern const Iri member_sequence;
extern const Iri has_subject;
extern const Iri has_data_graph;
extern const Iri has_schema;
extern const Iri logic_framework;
extern const Iri revises;
extern const Iri has_premise;
extern const Iri has_conclusion;
extern const Iri question_spec;
extern const Iri resource_kind;
extern const Iri unit_kind;
extern const Iri statement_category;
extern const Iri is_negated;

// Metadata predicates.
extern const Iri meta_creator;
extern const Iri meta_created;
extern const Iri meta_contributor;
extern const Iri meta_last_updated;
extern const Iri meta_author;
extern const Iri meta_license;

extern const Iri negation_unit;
extern const Iri is_about;  // IAO:0000136

extern const Iri default_layer_graph;
extern const Iri default_store_iri;
extern const Iri default_creator;
extern const Iri default_license;

// Nanopublication schema.
extern const Iri np_nanopublication;
extern const Iri np_has_assertion;
extern const Iri np_has_provenance;
extern const Iri np_has_publication_info;
extern const Iri prov_was_attributed_to;
extern const Iri prov_generated_at_time;

// (name, IRI) rows of the published constants table.
std::vector<std::pair<std::string, std::string>> reserved_table();

// Expands well-known CURIEs (rdf:, xsd:, semunit:, OBO "RO:0000086" style).
// Anything else is taken as an absolute IRI.
Iri expand(std::string_view curie_or_iri);

// Inverse of expand() for the well-known prefixes; used for compact output.
std::vector<std::pair<std::string, std::string>> standard_prefixes();

}  // namespace semunit::vocab
