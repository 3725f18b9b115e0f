#include "semunit/term.hpp"

#include "semunit/error.hpp"
#include "semunit/numeric.hpp"

namespace semunit {

namespace {
constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
}

bool Iri::is_valid(std::string_view value) {
    if (value.empty()) return false;
    auto colon = value.find(':');
    if (colon == std::string_view::npos || colon == 0) return false;
    for (char c : value) {
        auto u = static_cast<unsigned char>(c);
        if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
            c == '^' || c == '`' || c == '\\')
            return false;
    }
    return true;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
    if (!is_valid(value_)) throw Error(ErrorCode::validation, "malformed IRI: '" + value_ + "'");
}

std::string_view Iri::local_name() const {
    std::string_view v = value_;
    auto pos = v.find_last_of("#/:");
    if (pos == std::string_view::npos || pos + 1 == v.size()) return v;
    return v.substr(pos + 1);
}

const Iri& xsd_string() {
    static const Iri iri{std::string(kXsd) + "string"};
    return iri;
}

const Iri& rdf_lang_string() {
    static const Iri iri{"http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"};
    return iri;
}

bool is_numeric_datatype(const Iri& datatype) {
    const auto& s = datatype.str();
    if (s.rfind(kXsd, 0) != 0) return false;
    auto local = std::string_view(s).substr(kXsd.size());
    return local == "decimal" || local == "integer" || local == "double" || local == "float" ||
           local == "int" || local == "long" || local == "short" || local == "nonNegativeInteger" ||
           local == "positiveInteger" || local == "negativeInteger" || local == "nonPositiveInteger";
}

Literal::Literal(std::string lexical, Iri datatype)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)) {}

Literal::Literal(std::string lexical, std::string language)
    : lexical_(std::move(lexical)), datatype_(rdf_lang_string()), language_(std::move(language)) {
    if (language_->empty()) throw Error(ErrorCode::validation, "empty language tag");
}

bool Literal::is_numeric() const { return is_numeric_datatype(datatype_); }

bool Literal::well_formed() const {
    if (!is_numeric()) return true;
    return Decimal::parse(lexical_).has_value();
}

}  // namespace semunit
