#include "semunit/vocab.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace semunit::vocab {

namespace {

Iri in(std::string_view ns, std::string_view local) {
    std::string s(ns);
    s.append(local);
    return Iri(std::move(s));
}

constexpr std::array<std::string_view, 12> kOboPrefixes = {
    "RO", "IAO", "OBI", "UO", "PATO", "UBERON", "BFO", "IDO", "NCBITaxon", "BSPO", "ENVO", "OMO"};

}  // namespace

Iri rdf(std::string_view local) { return in(rdf_ns, local); }
Iri rdfs(std::string_view local) { return in(rdfs_ns, local); }
Iri xsd(std::string_view local) { return in(xsd_ns, local); }
Iri su(std::string_view local) { return in(semunit_ns, local); }

const Iri instance_of = in(rdf_ns, "type");
const Iri rdfs_label = in(rdfs_ns, "label");
const Iri skos_pref_label = in(skos_ns, "prefLabel");

const Iri xsd_decimal = in(xsd_ns, "decimal");
const Iri xsd_integer = in(xsd_ns, "integer");
const Iri xsd_double = in(xsd_ns, "double");
const Iri xsd_float = in(xsd_ns, "float");
const Iri xsd_boolean = in(xsd_ns, "boolean");
const Iri xsd_date_time = in(xsd_ns, "dateTime");

const Iri has_member = in(semunit_ns, "hasMember");
const Iri member_sequence = in(semunit_ns, "memberSequence");
const Iri has_subject = in(semunit_ns, "hasSubject");
const Iri has_data_graph = in(semunit_ns, "hasDataGraph");
const Iri has_schema = in(semunit_ns, "hasSchema");
const Iri logic_framework = in(semunit_ns, "logicFramework");
const Iri revises = in(semunit_ns, "revises");
const Iri has_premise = in(semunit_ns, "hasPremise");
const Iri has_conclusion = in(semunit_ns, "hasConclusion");
const Iri question_spec = in(semunit_ns, "questionSpecification");
const Iri resource_kind = in(semunit_ns, "resourceKind");
const Iri unit_kind = in(semunit_ns, "unitKind");
const Iri statement_category = in(semunit_ns, "statementCategory");
const Iri is_negated = in(semunit_ns, "isNegated");

const Iri meta_creator = in(dct_ns, "creator");
const Iri meta_created = in(dct_ns, "created");
const Iri meta_contributor = in(dct_ns, "contributor");
const Iri meta_last_updated = in(dct_ns, "modified");
const Iri meta_author = in(pav_ns, "authoredBy");
const Iri meta_license = in(dct_ns, "license");

const Iri negation_unit = in(semunit_ns, "NegationUnit");
const Iri is_about = in(obo_ns, "IAO_0000136");

const Iri default_layer_graph{"urn:semunit:layer"};
const Iri default_store_iri{"urn:semunit:graph"};
const Iri default_creator{"urn:semunit:agent:anonymous"};
const Iri default_license{"https://creativecommons.org/licenses/by/4.0/"};

const Iri np_nanopublication = in(np_ns, "Nanopublication");
const Iri np_has_assertion = in(np_ns, "hasAssertion");
const Iri np_has_provenance = in(np_ns, "hasProvenance");
const Iri np_has_publication_info = in(np_ns, "hasPublicationInfo");
const Iri prov_was_attributed_to = in(prov_ns, "wasAttributedTo");
const Iri prov_generated_at_time = in(prov_ns, "generatedAtTime");

std::vector<std::pair<std::string, std::string>> reserved_table() {
    return {
        {"instance_of", instance_of.str()},
        {"has_member", has_member.str()},
        {"member_sequence", member_sequence.str()},
        {"has_subject", has_subject.str()},
        {"has_data_graph", has_data_graph.str()},
        {"has_schema", has_schema.str()},
        {"logic_framework", logic_framework.str()},
        {"revises", revises.str()},
        {"has_premise", has_premise.str()},
        {"has_conclusion", has_conclusion.str()},
        {"question_specification", question_spec.str()},
        {"resource_kind", resource_kind.str()},
        {"unit_kind", unit_kind.str()},
        {"statement_category", statement_category.str()},
        {"is_negated", is_negated.str()},
        {"meta_creator", meta_creator.str()},
        {"meta_created", meta_created.str()},
        {"meta_contributor", meta_contributor.str()},
        {"meta_last_updated", meta_last_updated.str()},
        {"meta_author", meta_author.str()},
        {"meta_license", meta_license.str()},
        {"negation_unit", negation_unit.str()},
        {"is_about", is_about.str()},
        {"layer_graph", default_layer_graph.str()},
        {"store_iri", default_store_iri.str()},
    };
}

std::vector<std::pair<std::string, std::string>> standard_prefixes() {
    std::vector<std::pair<std::string, std::string>> out = {
        {"rdf", std::string(rdf_ns)},       {"rdfs", std::string(rdfs_ns)},
        {"xsd", std::string(xsd_ns)},       {"owl", std::string(owl_ns)},
        {"skos", std::string(skos_ns)},     {"dct", std::string(dct_ns)},
        {"pav", std::string(pav_ns)},       {"prov", std::string(prov_ns)},
        {"np", std::string(np_ns)},         {"semunit", std::string(semunit_ns)},
        {"suc", "https://w3id.org/semunit/classes#"},
        {"ex", "https://example.org/kg/"},  {"obo", std::string(obo_ns)},
    };
    return out;
}

Iri expand(std::string_view text) {
    auto colon = text.find(':');
    if (colon != std::string_view::npos) {
        auto prefix = text.substr(0, colon);
        auto local = text.substr(colon + 1);
        bool looks_absolute = local.size() >= 2 && local[0] == '/' && local[1] == '/';
        if (!looks_absolute) {
            for (const auto& [p, ns] : standard_prefixes()) {
                if (prefix == p) return Iri(ns + std::string(local));
            }
            if (std::find(kOboPrefixes.begin(), kOboPrefixes.end(), prefix) != kOboPrefixes.end() &&
                !local.empty() && std::all_of(local.begin(), local.end(), [](char c) {
                    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
                })) {
                std::string s(obo_ns);
                s.append(prefix).append("_").append(local);
                return Iri(std::move(s));
            }
        }
    }
    return Iri(std::string(text));
}

}  // namespace semunit::vocab
