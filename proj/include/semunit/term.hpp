#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace semunit {

// Absolute IRI. Construction validates: non-empty, has a scheme separator,
// no whitespace or characters that cannot appear inside <...>.
class Iri {
public:
    explicit Iri(std::string value);
    explicit Iri(const char* value) : Iri(std::string(value)) {}

    static bool is_valid(std::string_view value);

    const std::string& str() const noexcept { return value_; }

    // Text after the last '#', '/' or ':'.
    std::string_view local_name() const;

    auto operator<=>(const Iri&) const = default;
    bool operator==(const Iri&) const = default;

private:
    std::string value_;
};

const Iri& xsd_string();
const Iri& rdf_lang_string();

class Literal {
public:
    explicit Literal(std::string lexical, Iri datatype = xsd_string());
    Literal(std::string lexical, std::string language);  // rdf:langString

    const std::string& lexical() const noexcept { return lexical_; }
    const Iri& datatype() const noexcept { return datatype_; }
    const std::optional<std::string>& language() const noexcept { return language_; }

    bool is_numeric() const;
    // Numeric literals must have a decimal lexical form.
    bool well_formed() const;

    auto operator<=>(const Literal&) const = default;
    bool operator==(const Literal&) const = default;

private:
    std::string lexical_;
    Iri datatype_;
    std::optional<std::string> language_;
};

bool is_numeric_datatype(const Iri& datatype);

class Term {
public:
    Term(Iri resource) : value_(std::move(resource)) {}
    Term(Literal literal) : value_(std::move(literal)) {}

    bool is_resource() const noexcept { return std::holds_alternative<Iri>(value_); }
    bool is_literal() const noexcept { return std::holds_alternative<Literal>(value_); }
    const Iri& resource() const { return std::get<Iri>(value_); }
    const Literal& literal() const { return std::get<Literal>(value_); }
    const Iri* as_resource() const noexcept { return std::get_if<Iri>(&value_); }
    const Literal* as_literal() const noexcept { return std::get_if<Literal>(&value_); }

    auto operator<=>(const Term&) const = default;
    bool operator==(const Term&) const = default;

private:
    std::variant<Iri, Literal> value_;
};

struct Triple {
    Iri subject;
    Iri predicate;
    Term object;

    auto operator<=>(const Triple&) const = default;
    bool operator==(const Triple&) const = default;
};

// Ordered by (graph, subject, predicate, object).
struct Quad {
    Triple triple;
    Iri graph;

    std::strong_ordering operator<=>(const Quad& other) const {
        if (auto c = graph <=> other.graph; c != 0) return c;
        return triple <=> other.triple;
    }
    bool operator==(const Quad&) const = default;
};

}  // namespace semunit

template <>
struct std::hash<semunit::Iri> {
    std::size_t operator()(const semunit::Iri& iri) const noexcept {
        return std::hash<std::string>{}(iri.str());
    }
};
