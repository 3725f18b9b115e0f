#include "semunit/schema.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "semunit/error.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

const Slot* StatementSchema::slot(std::string_view name) const {
    for (const auto& s : slots)
        if (s.name == name) return &s;
    return nullptr;
}

std::vector<std::string> template_placeholders(std::string_view text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while ((pos = text.find("${", pos)) != std::string_view::npos) {
        auto end = text.find('}', pos + 2);
        if (end == std::string_view::npos) {
            out.emplace_back(text.substr(pos + 2));
            break;
        }
        out.emplace_back(text.substr(pos + 2, end - pos - 2));
        pos = end + 1;
    }
    return out;
}

namespace {

bool valid_identifier(std::string_view name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    return std::all_of(name.begin(), name.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_prefix(const std::vector<Iri>& a, const std::vector<Iri>& b) {
    return a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

void check_schema(const StatementSchema& schema) {
    std::vector<std::string> problems;
    auto problem = [&](std::string msg) { problems.push_back(std::move(msg)); };

    if (schema.slots.empty()) problem("schema declares no slots");
    std::set<std::string> names;
    for (const auto& slot : schema.slots) {
        const std::string where = "slot '" + slot.name + "': ";
        if (!valid_identifier(slot.name)) problem(where + "invalid slot name");
        if (slot.name == "subject") problem(where + "'subject' is reserved");
        if (!names.insert(slot.name).second) problem(where + "duplicate slot name");
        if (slot.path.empty()) problem(where + "empty path");
        if (slot.cardinality.max && slot.cardinality.min > *slot.cardinality.max)
            problem(where + "cardinality min exceeds max");
        if (slot.value_kind == ValueKind::literal && slot.class_constraint)
            problem(where + "literal slots cannot carry a class constraint");
        if (slot.value_kind == ValueKind::resource && (slot.datatype || slot.numeric_range || slot.pattern))
            problem(where + "resource slots cannot carry datatype, range or pattern");
        if (slot.numeric_range) {
            if (!slot.datatype || !is_numeric_datatype(*slot.datatype))
                problem(where + "range requires a numeric datatype");
            if (slot.numeric_range->max < slot.numeric_range->min) problem(where + "malformed range (min > max)");
        }
        if (slot.pattern) {
            try {
                std::regex re(*slot.pattern);
            } catch (const std::regex_error&) {
                problem(where + "invalid pattern");
            }
        }
    }
    for (const auto& a : schema.slots) {
        for (const auto& b : schema.slots) {
            if (&a == &b) continue;
            if (a.path == b.path && a.name < b.name)
                problem("slots '" + a.name + "' and '" + b.name + "' share the same path");
            if (is_prefix(a.path, b.path))
                problem("path of slot '" + a.name + "' is a prefix of slot '" + b.name + "'");
        }
    }

    std::set<std::string> displayed;
    auto check_placeholders = [&](const std::string& text, const char* which) {
        for (const auto& name : template_placeholders(text)) {
            if (name == "subject") continue;
            if (!schema.slot(name)) problem(std::string(which) + ": unknown placeholder ${" + name + "}");
            displayed.insert(name);
        }
    };
    if (schema.label_template.empty()) problem("label template is empty");
    check_placeholders(schema.label_template, "label");
    if (schema.negated_label_template) check_placeholders(*schema.negated_label_template, "negated_label");
    for (const auto& e : schema.mindmap_template) {
        for (const auto* end : {&e.from, &e.to}) {
            if (*end == "subject") continue;
            const Slot* s = schema.slot(*end);
            if (!s) problem("mindmap: unknown slot '" + *end + "'");
            else if (!s->display) problem("mindmap: slot '" + *end + "' is not a display slot");
            displayed.insert(*end);
        }
    }
    for (const auto& slot : schema.slots)
        if (slot.display && !displayed.count(slot.name))
            problem("slot '" + slot.name + "': display slot appears in no template");

    if (!problems.empty()) {
        std::string msg = "schema " + schema.unit_class.str() + " is invalid: " + problems.front();
        throw Error(ErrorCode::validation, msg, problems);
    }
}

void SchemaRegistry::add(StatementSchema schema) {
    check_schema(schema);
    if (schemas_.count(schema.unit_class))
        throw Error(ErrorCode::conflict, "duplicate schema class " + schema.unit_class.str());
    if (gupri_to_class_.count(schema.gupri))
        throw Error(ErrorCode::conflict, "duplicate schema gupri " + schema.gupri.str());
    gupri_to_class_.emplace(schema.gupri, schema.unit_class);
    Iri key = schema.unit_class;
    schemas_.emplace(std::move(key), std::move(schema));
}

const StatementSchema* SchemaRegistry::by_class(const Iri& unit_class) const {
    auto it = schemas_.find(unit_class);
    return it == schemas_.end() ? nullptr : &it->second;
}

const StatementSchema* SchemaRegistry::by_gupri(const Iri& gupri) const {
    auto it = gupri_to_class_.find(gupri);
    return it == gupri_to_class_.end() ? nullptr : by_class(it->second);
}

const StatementSchema& SchemaRegistry::get_by_class(const Iri& unit_class) const {
    if (auto s = by_class(unit_class)) return *s;
    throw Error(ErrorCode::not_found, "unknown statement class " + unit_class.str());
}

std::vector<const StatementSchema*> SchemaRegistry::all() const {
    std::vector<const StatementSchema*> out;
    for (const auto& [_, s] : schemas_) out.push_back(&s);
    return out;
}

std::vector<const StatementSchema*> SchemaRegistry::by_specificity() const {
    auto out = all();
    std::stable_sort(out.begin(), out.end(), [](const StatementSchema* a, const StatementSchema* b) {
        if (a->slots.size() != b->slots.size()) return a->slots.size() > b->slots.size();
        return a->unit_class < b->unit_class;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Definition file parsing

namespace {

class FieldError : public std::runtime_error {
public:
    FieldError(const YAML::Node& node, const std::string& field, const std::string& msg)
        : std::runtime_error(field + ": " + msg), line_(node.Mark().line + 1) {}
    int line() const { return line_; }

private:
    int line_;
};

std::string scalar(const YAML::Node& node, const std::string& field) {
    if (!node || !node.IsScalar()) throw FieldError(node, field, "expected a string");
    return node.as<std::string>();
}

Iri iri_field(const YAML::Node& node, const std::string& field) {
    std::string text = scalar(node, field);
    try {
        return vocab::expand(text);
    } catch (const Error&) {
        throw FieldError(node, field, "malformed IRI '" + text + "'");
    }
}

bool bool_field(const YAML::Node& node, const std::string& field, bool fallback) {
    if (!node) return fallback;
    try {
        return node.as<bool>();
    } catch (const YAML::Exception&) {
        throw FieldError(node, field, "expected true or false");
    }
}

std::size_t count_field(const YAML::Node& node, const std::string& field) {
    try {
        auto v = node.as<long long>();
        if (v < 0) throw FieldError(node, field, "must be non-negative");
        return static_cast<std::size_t>(v);
    } catch (const YAML::Exception&) {
        throw FieldError(node, field, "expected a count");
    }
}

Cardinality parse_cardinality(const YAML::Node& node, const std::string& field) {
    Cardinality c;
    if (!node) return c;
    auto parse_max = [&](const YAML::Node& n) -> std::optional<std::size_t> {
        std::string s = scalar(n, field + ".max");
        if (s == "*" || s == "unbounded") return std::nullopt;
        return count_field(n, field + ".max");
    };
    if (node.IsMap()) {
        if (node["min"]) c.min = count_field(node["min"], field + ".min");
        if (node["max"]) c.max = parse_max(node["max"]);
    } else if (node.IsSequence() && node.size() == 2) {
        c.min = count_field(node[0], field);
        c.max = parse_max(node[1]);
    } else if (node.IsScalar()) {
        std::string s = node.as<std::string>();
        auto dots = s.find("..");
        if (dots == std::string::npos) throw FieldError(node, field, "expected 'min..max'");
        try {
            c.min = std::stoul(s.substr(0, dots));
            std::string max = s.substr(dots + 2);
            c.max = (max == "*") ? std::nullopt : std::optional<std::size_t>(std::stoul(max));
        } catch (const std::exception&) {
            throw FieldError(node, field, "expected 'min..max'");
        }
    } else {
        throw FieldError(node, field, "malformed cardinality");
    }
    if (c.max && c.min > *c.max) throw FieldError(node, field, "min exceeds max");
    return c;
}

NumericRange parse_range(const YAML::Node& node, const std::string& field) {
    if (!node.IsSequence() || node.size() != 2) throw FieldError(node, field, "malformed range, expected [min, max]");
    auto lo = Decimal::parse(scalar(node[0], field));
    auto hi = Decimal::parse(scalar(node[1], field));
    if (!lo || !hi) throw FieldError(node, field, "malformed range, bounds must be numbers");
    if (*hi < *lo) throw FieldError(node, field, "malformed range, min exceeds max");
    return NumericRange{*lo, *hi};
}

Slot parse_slot(const YAML::Node& node, std::size_t index) {
    std::string field = "slots[" + std::to_string(index) + "]";
    if (!node.IsMap()) throw FieldError(node, field, "expected a mapping");
    Slot slot;
    slot.name = scalar(node["name"], field + ".name");
    field = "slots." + slot.name;
    const YAML::Node path = node["path"];
    if (!path) throw FieldError(node, field + ".path", "missing");
    if (path.IsScalar()) {
        slot.path.push_back(iri_field(path, field + ".path"));
    } else if (path.IsSequence()) {
        for (std::size_t i = 0; i < path.size(); ++i) slot.path.push_back(iri_field(path[i], field + ".path"));
    } else {
        throw FieldError(path, field + ".path", "expected a list of predicates");
    }
    if (slot.path.empty()) throw FieldError(path, field + ".path", "empty path");
    std::string kind = node["kind"] ? scalar(node["kind"], field + ".kind") : "resource";
    if (kind == "resource") slot.value_kind = ValueKind::resource;
    else if (kind == "literal") slot.value_kind = ValueKind::literal;
    else throw FieldError(node["kind"], field + ".kind", "expected resource or literal");
    if (node["class"]) slot.class_constraint = iri_field(node["class"], field + ".class");
    if (node["datatype"]) slot.datatype = iri_field(node["datatype"], field + ".datatype");
    if (node["range"]) slot.numeric_range = parse_range(node["range"], field + ".range");
    if (node["pattern"]) slot.pattern = scalar(node["pattern"], field + ".pattern");
    slot.cardinality = parse_cardinality(node["cardinality"], field + ".cardinality");
    slot.display = bool_field(node["display"], field + ".display", true);
    if (slot.value_kind == ValueKind::literal && !slot.datatype) slot.datatype = xsd_string();
    return slot;
}

const std::set<std::string> kSchemaFields = {"class", "description", "subject", "slots", "label",
                                             "negated_label", "mindmap", "lexical", "logic"};

StatementSchema parse_schema_node(const YAML::Node& doc) {
    if (!doc.IsMap()) throw FieldError(doc, "document", "expected a mapping");
    for (const auto& kv : doc) {
        std::string key = kv.first.as<std::string>();
        if (!kSchemaFields.count(key)) throw FieldError(kv.first, key, "unknown field");
    }
    Iri cls = iri_field(doc["class"], "class");
    StatementSchema s{.gupri = Iri(cls.str() + "Shape"), .unit_class = cls};
    if (doc["description"]) s.description = scalar(doc["description"], "description");
    if (const YAML::Node subject = doc["subject"]) {
        if (!subject.IsMap()) throw FieldError(subject, "subject", "expected a mapping");
        if (const YAML::Node kinds = subject["kinds"]) {
            for (std::size_t i = 0; i < kinds.size(); ++i) {
                try {
                    s.subject_kinds.insert(parse_resource_kind(scalar(kinds[i], "subject.kinds")));
                } catch (const Error& e) {
                    throw FieldError(kinds[i], "subject.kinds", e.what());
                }
            }
        }
        if (subject["class"]) s.subject_class = iri_field(subject["class"], "subject.class");
    }
    const YAML::Node slots = doc["slots"];
    if (!slots || !slots.IsSequence()) throw FieldError(doc, "slots", "expected a list of slots");
    for (std::size_t i = 0; i < slots.size(); ++i) s.slots.push_back(parse_slot(slots[i], i));
    s.label_template = scalar(doc["label"], "label");
    if (doc["negated_label"]) s.negated_label_template = scalar(doc["negated_label"], "negated_label");
    if (const YAML::Node mm = doc["mindmap"]) {
        if (!mm.IsSequence()) throw FieldError(mm, "mindmap", "expected a list of edges");
        for (std::size_t i = 0; i < mm.size(); ++i) {
            std::string f = "mindmap[" + std::to_string(i) + "]";
            s.mindmap_template.push_back(DisplayEdge{scalar(mm[i]["from"], f + ".from"),
                                                     mm[i]["label"] ? scalar(mm[i]["label"], f + ".label") : "",
                                                     scalar(mm[i]["to"], f + ".to")});
        }
    }
    s.lexical = bool_field(doc["lexical"], "lexical", false);
    if (doc["logic"]) s.logic_framework = scalar(doc["logic"], "logic");
    return s;
}

}  // namespace

std::vector<StatementSchema> parse_schema_text(std::string_view text, const std::string& source) {
    std::vector<StatementSchema> out;
    std::vector<YAML::Node> docs;
    try {
        docs = YAML::LoadAll(std::string(text));
    } catch (const YAML::Exception& e) {
        throw Error(ErrorCode::format, source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
    }
    std::set<Iri> classes;
    for (const auto& doc : docs) {
        if (!doc || doc.IsNull()) continue;
        int line = doc.Mark().line + 1;
        try {
            StatementSchema s = parse_schema_node(doc);
            if (!classes.insert(s.unit_class).second)
                throw Error(ErrorCode::conflict, "duplicate class IRI " + s.unit_class.str());
            check_schema(s);
            out.push_back(std::move(s));
        } catch (const FieldError& e) {
            throw Error(ErrorCode::format, source + ":" + std::to_string(e.line()) + ": " + e.what());
        } catch (const Error& e) {
            throw Error(e.code(), source + ":" + std::to_string(line) + ": " + e.what(), e.details());
        }
    }
    return out;
}

std::vector<StatementSchema> load_schema_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::not_found, "cannot read schema file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_schema_text(buf.str(), path.string());
}

std::vector<StatementSchema> load_schema_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) return load_schema_file(dir);
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".yaml" || ext == ".yml")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<StatementSchema> out;
    for (const auto& f : files) {
        auto part = load_schema_file(f);
        std::move(part.begin(), part.end(), std::back_inserter(out));
    }
    return out;
}

}  // namespace semunit
