#include "semunit/rdf_io.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "semunit/vocab.hpp"

namespace semunit {

namespace {

enum class Tok {
    iri, pname, bnode, string, langtag, datatype_mark, integer, decimal, dbl, boolean, a,
    dot, semicolon, comma, lbrace, rbrace, lbracket, rbracket, lparen, rparen,
    at_prefix, at_base, kw_prefix, kw_base, kw_graph, eof
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
};

void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_pn_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '-' || c == '.' || u >= 0x80;
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_ws();
        if (pos_ >= text_.size()) return {Tok::eof, "", line_};
        char c = text_[pos_];
        std::size_t line = line_;
        switch (c) {
            case '<': return {Tok::iri, read_iri(), line};
            case '"':
            case '\'': return {Tok::string, read_string(), line};
            case '.':
                if (pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
                    return read_number();
                ++pos_;
                return {Tok::dot, ".", line};
            case ';': ++pos_; return {Tok::semicolon, ";", line};
            case ',': ++pos_; return {Tok::comma, ",", line};
            case '{': ++pos_; return {Tok::lbrace, "{", line};
            case '}': ++pos_; return {Tok::rbrace, "}", line};
            case '[': ++pos_; return {Tok::lbracket, "[", line};
            case ']': ++pos_; return {Tok::rbracket, "]", line};
            case '(': ++pos_; return {Tok::lparen, "(", line};
            case ')': ++pos_; return {Tok::rparen, ")", line};
            case '^':
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '^') {
                    pos_ += 2;
                    return {Tok::datatype_mark, "^^", line};
                }
                throw ParseError(line, "unexpected '^'");
            case '@': return read_at();
            default: break;
        }
        if (c == '_' && pos_ + 1 < text_.size() && text_[pos_ + 1] == ':') {
            pos_ += 2;
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_pn_char(text_[pos_])) ++pos_;
            while (pos_ > start && text_[pos_ - 1] == '.') --pos_;
            if (pos_ == start) throw ParseError(line, "empty blank node label");
            return {Tok::bnode, std::string(text_.substr(start, pos_ - start)), line};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-') return read_number();
        return read_name();
    }

    std::size_t line() const { return line_; }

private:
    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    unsigned long read_hex(std::size_t n) {
        if (pos_ + n > text_.size()) throw ParseError(line_, "truncated unicode escape");
        unsigned long cp = 0;
        for (std::size_t i = 0; i < n; ++i) {
            char h = text_[pos_++];
            cp <<= 4;
            if (h >= '0' && h <= '9') cp |= static_cast<unsigned long>(h - '0');
            else if (h >= 'a' && h <= 'f') cp |= static_cast<unsigned long>(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') cp |= static_cast<unsigned long>(h - 'A' + 10);
            else throw ParseError(line_, "bad hex digit in escape");
        }
        return cp;
    }

    std::string read_iri() {
        ++pos_;
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) throw ParseError(line_, "unterminated IRI");
            char c = text_[pos_];
            if (c == '>') {
                ++pos_;
                return out;
            }
            if (c == '\n' || c == ' ') throw ParseError(line_, "whitespace in IRI");
            if (c == '\\') {
                ++pos_;
                if (pos_ >= text_.size()) throw ParseError(line_, "bad escape in IRI");
                char e = text_[pos_++];
                if (e == 'u') append_utf8(out, read_hex(4));
                else if (e == 'U') append_utf8(out, read_hex(8));
                else throw ParseError(line_, "bad escape in IRI");
                continue;
            }
            out.push_back(c);
            ++pos_;
        }
    }

    std::string read_string() {
        char q = text_[pos_];
        bool long_form = text_.substr(pos_, 3) == std::string(3, q);
        pos_ += long_form ? 3 : 1;
        std::string out;
        while (true) {
            if (pos_ >= text_.size()) throw ParseError(line_, "unterminated string");
            char c = text_[pos_];
            if (long_form) {
                if (text_.substr(pos_, 3) == std::string(3, q)) {
                    pos_ += 3;
                    return out;
                }
            } else if (c == q) {
                ++pos_;
                return out;
            } else if (c == '\n') {
                throw ParseError(line_, "newline in string");
            }
            if (c == '\\') {
                ++pos_;
                if (pos_ >= text_.size()) throw ParseError(line_, "bad escape");
                char e = text_[pos_++];
                switch (e) {
                    case 't': out.push_back('\t'); break;
                    case 'n': out.push_back('\n'); break;
                    case 'r': out.push_back('\r'); break;
                    case 'b': out.push_back('\b'); break;
                    case 'f': out.push_back('\f'); break;
                    case '"': out.push_back('"'); break;
                    case '\'': out.push_back('\''); break;
                    case '\\': out.push_back('\\'); break;
                    case 'u': append_utf8(out, read_hex(4)); break;
                    case 'U': append_utf8(out, read_hex(8)); break;
                    default: throw ParseError(line_, std::string("bad escape \\") + e);
                }
                continue;
            }
            if (c == '\n') ++line_;
            out.push_back(c);
            ++pos_;
        }
    }

    Token read_number() {
        std::size_t line = line_;
        std::size_t start = pos_;
        if (text_[pos_] == '+' || text_[pos_] == '-') ++pos_;
        bool digits = false, point = false, exp = false;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
            digits = true;
        }
        if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            point = true;
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            digits = true;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            exp = true;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            std::size_t exp_start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (exp_start == pos_) throw ParseError(line, "malformed exponent");
        }
        if (!digits) throw ParseError(line, "malformed number");
        std::string s(text_.substr(start, pos_ - start));
        return {exp ? Tok::dbl : (point ? Tok::decimal : Tok::integer), s, line};
    }

    Token read_at() {
        std::size_t line = line_;
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-'))
            ++pos_;
        std::string word(text_.substr(start, pos_ - start));
        if (word == "prefix") return {Tok::at_prefix, word, line};
        if (word == "base") return {Tok::at_base, word, line};
        if (word.empty()) throw ParseError(line, "empty language tag");
        return {Tok::langtag, word, line};
    }

    Token read_name() {
        std::size_t line = line_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && (is_pn_char(text_[pos_]) || text_[pos_] == ':' ||
                                       text_[pos_] == '%' || text_[pos_] == '\\'))
            ++pos_;
        while (pos_ > start && text_[pos_ - 1] == '.') --pos_;
        if (pos_ == start) throw ParseError(line, std::string("unexpected character '") + text_[pos_] + "'");
        std::string word(text_.substr(start, pos_ - start));
        if (word == "a") return {Tok::a, word, line};
        if (word == "true" || word == "false") return {Tok::boolean, word, line};
        std::string upper = word;
        std::transform(upper.begin(), upper.end(), upper.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
        if (upper == "PREFIX") return {Tok::kw_prefix, word, line};
        if (upper == "BASE") return {Tok::kw_base, word, line};
        if (upper == "GRAPH") return {Tok::kw_graph, word, line};
        if (word.find(':') == std::string::npos) throw ParseError(line, "unexpected token '" + word + "'");
        return {Tok::pname, word, line};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

class Parser {
public:
    Parser(std::string_view text, RdfSyntax syntax, const Iri& default_graph)
        : lexer_(text), syntax_(syntax), default_graph_(default_graph) {
        advance();
    }

    std::vector<Quad> run() {
        if (syntax_ == RdfSyntax::ntriples || syntax_ == RdfSyntax::nquads) {
            while (cur_.kind != Tok::eof) line_statement();
        } else {
            while (cur_.kind != Tok::eof) statement();
        }
        return std::move(out_);
    }

private:
    void advance() { cur_ = lexer_.next(); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(cur_.line, msg); }

    void expect(Tok kind, const char* what) {
        if (cur_.kind != kind) fail(std::string("expected ") + what + ", found '" + cur_.text + "'");
        advance();
    }

    Iri make_iri(const std::string& value, std::size_t line) const {
        std::string resolved = value;
        if (base_ && value.find(':') == std::string::npos) resolved = *base_ + value;
        if (!Iri::is_valid(resolved)) throw ParseError(line, "malformed IRI <" + value + ">");
        return Iri(resolved);
    }

    Iri expand_pname(const Token& t) const {
        auto colon = t.text.find(':');
        std::string prefix = t.text.substr(0, colon);
        std::string local = t.text.substr(colon + 1);
        auto it = prefixes_.find(prefix);
        if (it == prefixes_.end()) throw ParseError(t.line, "undeclared prefix '" + prefix + ":'");
        std::string unescaped;
        for (std::size_t i = 0; i < local.size(); ++i) {
            if (local[i] == '\\' && i + 1 < local.size()) ++i;
            unescaped.push_back(local[i]);
        }
        return make_iri(it->second + unescaped, t.line);
    }

    Iri resource() {
        Token t = cur_;
        switch (t.kind) {
            case Tok::iri: advance(); return make_iri(t.text, t.line);
            case Tok::pname:
                if (syntax_ == RdfSyntax::ntriples || syntax_ == RdfSyntax::nquads)
                    fail("prefixed names are not allowed in N-Triples/N-Quads");
                advance();
                return expand_pname(t);
            case Tok::bnode: advance(); return Iri(std::string(skolem_prefix) + t.text);
            default: fail("expected IRI, found '" + t.text + "'");
        }
    }

    Iri predicate() {
        if (cur_.kind == Tok::a) {
            if (syntax_ == RdfSyntax::ntriples || syntax_ == RdfSyntax::nquads) fail("'a' is not allowed here");
            advance();
            return vocab::instance_of;
        }
        if (cur_.kind == Tok::bnode) fail("blank node in predicate position");
        return resource();
    }

    Term object() {
        Token t = cur_;
        switch (t.kind) {
            case Tok::iri:
            case Tok::pname:
            case Tok::bnode: return resource();
            case Tok::string: {
                advance();
                if (cur_.kind == Tok::langtag) {
                    std::string lang = cur_.text;
                    advance();
                    return Literal(t.text, lang);
                }
                if (cur_.kind == Tok::datatype_mark) {
                    advance();
                    return Literal(t.text, resource());
                }
                return Literal(t.text);
            }
            case Tok::integer:
            case Tok::decimal:
            case Tok::dbl:
            case Tok::boolean: {
                if (syntax_ == RdfSyntax::ntriples || syntax_ == RdfSyntax::nquads)
                    fail("bare literal '" + t.text + "' is not allowed in N-Triples/N-Quads");
                advance();
                const Iri& dt = t.kind == Tok::integer   ? vocab::xsd_integer
                                : t.kind == Tok::decimal ? vocab::xsd_decimal
                                : t.kind == Tok::dbl     ? vocab::xsd_double
                                                         : vocab::xsd_boolean;
                return Literal(t.text, dt);
            }
            case Tok::lbracket: return anonymous_node();
            case Tok::lparen: fail("RDF collections are not supported");
            default: fail("expected object, found '" + t.text + "'");
        }
    }

    // "[ p o ; ... ]": a fresh skolem IRI carrying the nested triples.
    Iri anonymous_node() {
        if (syntax_ == RdfSyntax::ntriples || syntax_ == RdfSyntax::nquads) fail("'[' is not allowed here");
        advance();
        Iri node(std::string(skolem_prefix) + "anon-" + std::to_string(++anonymous_));
        if (cur_.kind != Tok::rbracket) predicate_object_list(node, graph_);
        expect(Tok::rbracket, "']'");
        return node;
    }

    Iri subject() { return cur_.kind == Tok::lbracket ? anonymous_node() : resource(); }

    void line_statement() {
        std::size_t line = cur_.line;
        Iri s = resource();
        Iri p = predicate();
        Term o = object();
        Iri g = default_graph_;
        if (syntax_ == RdfSyntax::nquads && cur_.kind != Tok::dot) g = resource();
        if (cur_.kind != Tok::dot) fail("expected '.' at end of statement");
        if (cur_.line != line) throw ParseError(line, "statement must end on its own line");
        advance();
        if (cur_.kind != Tok::eof && cur_.line == line) fail("more than one statement on a line");
        out_.push_back(Quad{Triple{std::move(s), std::move(p), std::move(o)}, std::move(g)});
    }

    void prefix_decl(bool sparql_style) {
        advance();
        if (cur_.kind != Tok::pname || cur_.text.back() != ':') fail("expected prefix name");
        std::string name = cur_.text.substr(0, cur_.text.size() - 1);
        advance();
        if (cur_.kind != Tok::iri) fail("expected namespace IRI");
        std::string ns = cur_.text;
        advance();
        prefixes_[name] = ns;
        if (!sparql_style) expect(Tok::dot, "'.'");
    }

    void base_decl(bool sparql_style) {
        advance();
        if (cur_.kind != Tok::iri) fail("expected base IRI");
        base_ = cur_.text;
        advance();
        if (!sparql_style) expect(Tok::dot, "'.'");
    }

    void statement() {
        switch (cur_.kind) {
            case Tok::at_prefix: prefix_decl(false); return;
            case Tok::kw_prefix: prefix_decl(true); return;
            case Tok::at_base: base_decl(false); return;
            case Tok::kw_base: base_decl(true); return;
            default: break;
        }
        if (syntax_ == RdfSyntax::trig) {
            if (cur_.kind == Tok::kw_graph) {
                advance();
                Iri g = resource();
                graph_block(g);
                return;
            }
            if (cur_.kind == Tok::lbrace) {
                graph_block(default_graph_);
                return;
            }
            graph_ = default_graph_;
            Iri s = subject();
            if (cur_.kind == Tok::lbrace) {
                graph_block(s);
                return;
            }
            predicate_object_list(s, default_graph_);
            expect(Tok::dot, "'.'");
            return;
        }
        graph_ = default_graph_;
        Iri s = subject();
        if (cur_.kind == Tok::dot && s.str().rfind(std::string(skolem_prefix) + "anon-", 0) == 0) {
            advance();  // "[ p o ] ." stands alone
            return;
        }
        predicate_object_list(s, default_graph_);
        expect(Tok::dot, "'.'");
    }

    void graph_block(const Iri& g) {
        expect(Tok::lbrace, "'{'");
        while (cur_.kind != Tok::rbrace) {
            if (cur_.kind == Tok::eof) fail("unterminated graph block");
            graph_ = g;
            Iri s = subject();
            predicate_object_list(s, g);
            if (cur_.kind == Tok::dot) {
                advance();
                continue;
            }
            if (cur_.kind != Tok::rbrace) fail("expected '.' or '}'");
        }
        advance();
    }

    void predicate_object_list(const Iri& s, const Iri& g) {
        while (true) {
            Iri p = predicate();
            while (true) {
                out_.push_back(Quad{Triple{s, p, object()}, g});
                if (cur_.kind != Tok::comma) break;
                advance();
            }
            if (cur_.kind != Tok::semicolon) return;
            while (cur_.kind == Tok::semicolon) advance();
            if (cur_.kind == Tok::dot || cur_.kind == Tok::rbrace) return;
        }
    }

    Lexer lexer_;
    RdfSyntax syntax_;
    Iri default_graph_;
    Token cur_{Tok::eof, "", 1};
    std::map<std::string, std::string> prefixes_;
    std::optional<std::string> base_;
    std::vector<Quad> out_;
    Iri graph_{"urn:semunit:unset"};
    std::size_t anonymous_ = 0;
};

bool simple_local(std::string_view local) {
    if (local.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(local[0])) && local[0] != '_') return false;
    return std::all_of(local.begin(), local.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

class Compactor {
public:
    explicit Compactor(const std::vector<std::pair<std::string, std::string>>& prefixes)
        : prefixes_(prefixes) {
        // Longest namespace first so nested namespaces pick the tightest prefix.
        std::stable_sort(prefixes_.begin(), prefixes_.end(),
                         [](const auto& a, const auto& b) { return a.second.size() > b.second.size(); });
    }

    std::string iri(const Iri& value) const {
        const auto& s = value.str();
        for (const auto& [p, ns] : prefixes_) {
            if (s.size() > ns.size() && s.compare(0, ns.size(), ns) == 0 &&
                simple_local(std::string_view(s).substr(ns.size())))
                return p + ":" + s.substr(ns.size());
        }
        return "<" + s + ">";
    }

    std::string term(const Term& t) const {
        if (auto r = t.as_resource()) return iri(*r);
        const auto& lit = t.literal();
        std::string out = "\"" + escape_string(lit.lexical()) + "\"";
        if (lit.language()) return out + "@" + *lit.language();
        if (lit.datatype() == xsd_string()) return out;
        return out + "^^" + iri(lit.datatype());
    }

private:
    std::vector<std::pair<std::string, std::string>> prefixes_;
};

}  // namespace

std::vector<Quad> parse_rdf(std::string_view text, RdfSyntax syntax, const Iri& default_graph) {
    return Parser(text, syntax, default_graph).run();
}

std::vector<Triple> parse_triples(std::string_view text, RdfSyntax syntax) {
    auto quads = parse_rdf(text, syntax, vocab::default_store_iri);
    std::vector<Triple> out;
    out.reserve(quads.size());
    for (auto& q : quads) out.push_back(std::move(q.triple));
    return out;
}

RdfSyntax syntax_for_path(std::string_view path) {
    auto ends_with = [&](std::string_view suffix) {
        return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
    };
    if (ends_with(".nq")) return RdfSyntax::nquads;
    if (ends_with(".ttl")) return RdfSyntax::turtle;
    if (ends_with(".trig")) return RdfSyntax::trig;
    return RdfSyntax::ntriples;
}

std::string escape_string(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string to_ntriples(const Term& term) {
    if (auto r = term.as_resource()) return "<" + r->str() + ">";
    const auto& lit = term.literal();
    std::string out = "\"" + escape_string(lit.lexical()) + "\"";
    if (lit.language()) return out + "@" + *lit.language();
    if (lit.datatype() == xsd_string()) return out;
    return out + "^^<" + lit.datatype().str() + ">";
}

std::string to_ntriples(const Triple& t) {
    return "<" + t.subject.str() + "> <" + t.predicate.str() + "> " + to_ntriples(t.object) + " .";
}

std::string to_nquads(const Quad& q) {
    const auto& t = q.triple;
    return "<" + t.subject.str() + "> <" + t.predicate.str() + "> " + to_ntriples(t.object) + " <" +
           q.graph.str() + "> .";
}

std::string write_ntriples(const std::vector<Triple>& triples) {
    std::string out;
    for (const auto& t : triples) out += to_ntriples(t) + "\n";
    return out;
}

std::string write_nquads(const std::vector<Quad>& quads) {
    std::string out;
    for (const auto& q : quads) out += to_nquads(q) + "\n";
    return out;
}

std::string write_trig(const std::vector<std::pair<Iri, std::vector<Triple>>>& graphs,
                       const std::vector<std::pair<std::string, std::string>>& prefixes) {
    Compactor c(prefixes);
    std::ostringstream out;
    for (const auto& [p, ns] : prefixes) out << "@prefix " << p << ": <" << ns << "> .\n";
    for (const auto& [graph, triples] : graphs) {
        std::vector<Triple> sorted = triples;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        out << "\n" << c.iri(graph) << " {\n";
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            const auto& t = sorted[i];
            bool same_subject = i > 0 && sorted[i - 1].subject == t.subject;
            if (!same_subject) out << "  " << c.iri(t.subject);
            else out << "   ";
            out << " " << c.iri(t.predicate) << " " << c.term(t.object);
            bool next_same = i + 1 < sorted.size() && sorted[i + 1].subject == t.subject;
            out << (next_same ? " ;\n" : " .\n");
        }
        out << "}\n";
    }
    return out.str();
}

}  // namespace semunit
