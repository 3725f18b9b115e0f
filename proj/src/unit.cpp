#include "semunit/unit.hpp"

#include <array>
#include <cstdio>

#include "semunit/error.hpp"
#include "semunit/vocab.hpp"

namespace semunit {

namespace {

constexpr std::array<std::pair<ResourceKind, std::string_view>, 7> kResourceKinds{{
    {ResourceKind::named_individual, "named-individual"},
    {ResourceKind::some_instance, "some-instance"},
    {ResourceKind::most_instances, "most-instances"},
    {ResourceKind::every_instance, "every-instance"},
    {ResourceKind::ontology_class, "ontology-class"},
    {ResourceKind::semantic_unit, "semantic-unit"},
    {ResourceKind::relation, "relation"},
}};

constexpr std::array<std::pair<StatementCategory, std::string_view>, 5> kCategories{{
    {StatementCategory::lexical, "lexical"},
    {StatementCategory::assertional, "assertional"},
    {StatementCategory::contingent, "contingent"},
    {StatementCategory::prototypical, "prototypical"},
    {StatementCategory::universal, "universal"},
}};

constexpr std::array<std::pair<UnitKind, std::string_view>, 10> kUnitKinds{{
    {UnitKind::statement, "statement"},
    {UnitKind::item, "item"},
    {UnitKind::item_group, "item-group"},
    {UnitKind::granularity_tree, "granularity-tree"},
    {UnitKind::granular_item_group, "granular-item-group"},
    {UnitKind::context, "context"},
    {UnitKind::standard_information, "standard-information"},
    {UnitKind::logical_argument, "logical-argument"},
    {UnitKind::dataset, "dataset"},
    {UnitKind::question, "question"},
}};

template <class Table, class E>
std::string_view name_of(const Table& table, E value) {
    for (const auto& [v, n] : table)
        if (v == value) return n;
    return "unknown";
}

template <class Table>
auto value_of(const Table& table, std::string_view text, const char* what) {
    for (const auto& [v, n] : table)
        if (n == text) return v;
    throw Error(ErrorCode::validation, std::string("unknown ") + what + " '" + std::string(text) + "'");
}

}  // namespace

std::string_view to_string(ResourceKind kind) { return name_of(kResourceKinds, kind); }
std::string_view to_string(StatementCategory category) { return name_of(kCategories, category); }
std::string_view to_string(UnitKind kind) { return name_of(kUnitKinds, kind); }

ResourceKind parse_resource_kind(std::string_view text) { return value_of(kResourceKinds, text, "resource kind"); }
StatementCategory parse_statement_category(std::string_view text) {
    return value_of(kCategories, text, "statement category");
}
UnitKind parse_unit_kind(std::string_view text) { return value_of(kUnitKinds, text, "unit kind"); }

Iri resource_kind_class(ResourceKind kind) {
    switch (kind) {
        case ResourceKind::named_individual: return vocab::su("NamedIndividualResource");
        case ResourceKind::some_instance: return vocab::su("SomeInstanceResource");
        case ResourceKind::most_instances: return vocab::su("MostInstancesResource");
        case ResourceKind::every_instance: return vocab::su("EveryInstanceResource");
        case ResourceKind::ontology_class: return vocab::su("OntologyClassResource");
        case ResourceKind::semantic_unit: return vocab::su("SemanticUnitResource");
        case ResourceKind::relation: return vocab::su("RelationResource");
    }
    throw Error(ErrorCode::validation, "bad resource kind");
}

Iri category_class(StatementCategory category) {
    switch (category) {
        case StatementCategory::lexical: return vocab::su("LexicalStatementUnit");
        case StatementCategory::assertional: return vocab::su("AssertionalStatementUnit");
        case StatementCategory::contingent: return vocab::su("ContingentStatementUnit");
        case StatementCategory::prototypical: return vocab::su("PrototypicalStatementUnit");
        case StatementCategory::universal: return vocab::su("UniversalStatementUnit");
    }
    throw Error(ErrorCode::validation, "bad statement category");
}

Iri unit_kind_class(UnitKind kind) {
    switch (kind) {
        case UnitKind::statement: return vocab::su("StatementUnit");
        case UnitKind::item: return vocab::su("ItemUnit");
        case UnitKind::item_group: return vocab::su("ItemGroupUnit");
        case UnitKind::granularity_tree: return vocab::su("GranularityTreeUnit");
        case UnitKind::granular_item_group: return vocab::su("GranularItemGroupUnit");
        case UnitKind::context: return vocab::su("ContextUnit");
        case UnitKind::standard_information: return vocab::su("StandardInformationUnit");
        case UnitKind::logical_argument: return vocab::su("LogicalArgumentUnit");
        case UnitKind::dataset: return vocab::su("DatasetUnit");
        case UnitKind::question: return vocab::su("QuestionUnit");
    }
    throw Error(ErrorCode::validation, "bad unit kind");
}

std::optional<ResourceKind> resource_kind_from_class(const Iri& cls) {
    for (const auto& [k, _] : kResourceKinds)
        if (resource_kind_class(k) == cls) return k;
    return std::nullopt;
}

bool is_compound(UnitKind kind) { return kind != UnitKind::statement && kind != UnitKind::question; }

StatementCategory classify(ResourceKind subject_kind, bool lexical_schema) {
    if (lexical_schema) return StatementCategory::lexical;
    switch (subject_kind) {
        case ResourceKind::some_instance: return StatementCategory::contingent;
        case ResourceKind::most_instances: return StatementCategory::prototypical;
        case ResourceKind::every_instance:
        case ResourceKind::ontology_class:
        case ResourceKind::relation: return StatementCategory::universal;
        case ResourceKind::named_individual:
        case ResourceKind::semantic_unit: return StatementCategory::assertional;
    }
    return StatementCategory::assertional;
}

std::string format_rfc3339(Timestamp t) {
    using namespace std::chrono;
    auto day = floor<days>(t);
    year_month_day ymd{day};
    hh_mm_ss hms{t - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf;
}

Timestamp parse_rfc3339(std::string_view text) {
    using namespace std::chrono;
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    std::string str(text);
    int consumed = 0;
    if (std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi, &s, &consumed) != 6)
        throw Error(ErrorCode::validation, "malformed timestamp '" + str + "'");
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 60)
        throw Error(ErrorCode::validation, "malformed timestamp '" + str + "'");
    Timestamp t = sys_days{ymd} + hours{h} + minutes{mi} + seconds{s};
    std::string_view rest = text.substr(static_cast<std::size_t>(consumed));
    if (!rest.empty() && rest[0] == '.') {
        std::size_t i = 1;
        while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') ++i;
        rest = rest.substr(i);
    }
    if (rest == "Z" || rest.empty()) return t;
    int oh = 0, om = 0;
    char sign = rest[0];
    if ((sign == '+' || sign == '-') &&
        std::sscanf(std::string(rest.substr(1)).c_str(), "%2d:%2d", &oh, &om) == 2) {
        auto offset = hours{oh} + minutes{om};
        return sign == '+' ? t - offset : t + offset;
    }
    throw Error(ErrorCode::validation, "malformed timestamp '" + str + "'");
}

}  // namespace semunit
