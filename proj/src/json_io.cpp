#include "semunit/json_io.hpp"

#include "semunit/error.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

using nlohmann::json;

json term_to_json(const Term& t) {
    if (const Iri* r = t.as_resource()) return {{"iri", r->str()}};
    const Literal& l = t.literal();
    json j{{"literal", l.lexical()}, {"datatype", l.datatype().str()}};
    if (l.language()) j["language"] = *l.language();
    return j;
}

Term term_from_json(const json& j) {
    try {
        if (j.is_string()) return vocab::expand(j.get<std::string>());
        if (j.is_object() && j.contains("iri")) return vocab::expand(j.at("iri").get<std::string>());
        if (j.is_object() && j.contains("literal")) {
            const json& lex = j.at("literal");
            std::string text = lex.is_string() ? lex.get<std::string>() : lex.dump();
            if (j.contains("language")) return Literal(text, j.at("language").get<std::string>());
            if (j.contains("datatype")) return Literal(text, vocab::expand(j.at("datatype").get<std::string>()));
            if (lex.is_number_integer()) return Literal(text, vocab::xsd_integer);
            if (lex.is_number()) return Literal(text, vocab::xsd_decimal);
            return Literal(text);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::format, std::string("malformed term: ") + e.what());
    }
    throw Error(ErrorCode::format, "malformed term: " + j.dump());
}

json triple_to_json(const Triple& t) {
    return {{"subject", t.subject.str()}, {"predicate", t.predicate.str()}, {"object", term_to_json(t.object)}};
}

json triples_to_json(const std::vector<Triple>& triples) {
    json out = json::array();
    for (const auto& t : triples) out.push_back(triple_to_json(t));
    return out;
}

json triples_to_json(const std::set<Triple>& triples) {
    return triples_to_json(std::vector<Triple>(triples.begin(), triples.end()));
}

json metadata_to_json(const UnitMetadata& md) {
    json j{{"creator", md.creator.str()},
           {"created", format_rfc3339(md.created)},
           {"last_updated", format_rfc3339(md.last_updated)},
           {"license", md.license.str()}};
    j["contributor"] = md.contributor ? json(md.contributor->str()) : json(nullptr);
    j["author"] = md.author ? json(md.author->str()) : json(nullptr);
    return j;
}

json unit_to_json(const SemanticUnit& u) {
    json j{{"gupri", u.gupri.str()},
           {"unit_class", u.unit_class.str()},
           {"kind", std::string(to_string(u.kind))},
           {"metadata", metadata_to_json(u.metadata)},
           {"negated", u.negated}};
    j["data_graph"] = u.data_graph ? json(u.data_graph->str()) : json(nullptr);
    j["members"] = json::array();
    for (const auto& m : u.members) j["members"].push_back(m.str());
    j["subject"] = u.subject ? json(u.subject->str()) : json(nullptr);
    j["schema"] = u.schema_ref ? json(u.schema_ref->str()) : json(nullptr);
    j["logic_framework"] = u.logic_framework ? json(*u.logic_framework) : json(nullptr);
    j["category"] = u.category ? json(std::string(to_string(*u.category))) : json(nullptr);
    j["revises"] = u.revises ? json(u.revises->str()) : json(nullptr);
    if (!u.roles.empty()) {
        j["roles"] = json::array();
        for (const auto& [role, target] : u.roles) j["roles"].push_back({{"role", role}, {"unit", target.str()}});
    }
    return j;
}

}  // namespace semunit
