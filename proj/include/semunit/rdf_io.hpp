#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semunit/error.hpp"
#include "semunit/term.hpp"

namespace semunit {

enum class RdfSyntax { ntriples, nquads, turtle, trig };

// Thrown with ErrorCode::format; line() is 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(ErrorCode::format, "line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Blank nodes are skolemized to urn:semunit:skolem:<label>.
inline constexpr std::string_view skolem_prefix = "urn:semunit:skolem:";

// Parses any of the supported syntaxes. Triples outside a graph block land in
// default_graph.
std::vector<Quad> parse_rdf(std::string_view text, RdfSyntax syntax, const Iri& default_graph);
std::vector<Triple> parse_triples(std::string_view text, RdfSyntax syntax);

RdfSyntax syntax_for_path(std::string_view path);

std::string to_ntriples(const Term& term);
std::string to_ntriples(const Triple& triple);
std::string to_nquads(const Quad& quad);
std::string write_ntriples(const std::vector<Triple>& triples);
std::string write_nquads(const std::vector<Quad>& quads);

// Named graphs written in the given order; triples sorted within each graph.
// Prefixes are used for compact output where the local part is simple.
std::string write_trig(const std::vector<std::pair<Iri, std::vector<Triple>>>& graphs,
                       const std::vector<std::pair<std::string, std::string>>& prefixes);

std::string escape_string(std::string_view text);

}  // namespace semunit
