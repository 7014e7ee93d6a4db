#include "procevo/schema.hpp"

#include "procevo/config_text.hpp"
#include "procevo/error.hpp"

namespace procevo {

ProcessSchema ProcessSchema::default_schema() {
    ProcessSchema schema;
    schema.entity_type_names = {"ProcessModule", "Activity", "Product", "Role", "TextModule"};
    schema.text_property_names = {"name", "description"};
    schema.relation_names = {"contains", "responsible", "produces", "uses"};
    schema.containment_relation = "contains";
    return schema;
}

namespace {

std::set<std::string, std::less<>> to_set(std::string_view value) {
    std::set<std::string, std::less<>> out;
    for (std::string& item : config::split_list(value)) out.insert(std::move(item));
    return out;
}

std::string join(const std::set<std::string, std::less<>>& items) {
    std::string out;
    for (const std::string& item : items) {
        if (!out.empty()) out += ", ";
        out += item;
    }
    return out;
}

} // namespace

ProcessSchema ProcessSchema::parse(std::string_view text) {
    ProcessSchema schema = default_schema();
    for (const config::Entry& e : config::parse(text)) {
        if (e.key == "schema_namespace") {
            schema.schema_namespace = e.value;
        } else if (e.key == "base_namespace") {
            schema.base_namespace = e.value;
        } else if (e.key == "entity_types") {
            schema.entity_type_names = to_set(e.value);
        } else if (e.key == "text_properties") {
            schema.text_property_names = to_set(e.value);
        } else if (e.key == "relations") {
            schema.relation_names = to_set(e.value);
        } else if (e.key == "containment") {
            schema.containment_relation = e.value;
        } else {
            throw ParseError(e.line, "unknown schema key '" + e.key + "'");
        }
    }
    schema.validate();
    return schema;
}

std::string ProcessSchema::to_text() const {
    std::string out;
    out += "schema_namespace = " + schema_namespace + "\n";
    out += "base_namespace = " + base_namespace + "\n";
    out += "entity_types = " + join(entity_type_names) + "\n";
    out += "text_properties = " + join(text_property_names) + "\n";
    out += "relations = " + join(relation_names) + "\n";
    out += "containment = " + containment_relation + "\n";
    return out;
}

void ProcessSchema::validate() const {
    if (!Iri::is_valid(schema_namespace)) throw InvalidConfig("schema namespace is not a valid IRI prefix");
    if (!Iri::is_valid(base_namespace)) throw InvalidConfig("base namespace is not a valid IRI prefix");
    for (const std::string& name : text_property_names) {
        if (relation_names.contains(name))
            throw InvalidConfig("'" + name + "' is both a text property and a relation");
        if (name == "type") throw InvalidConfig("'type' is reserved for the type predicate");
    }
    if (relation_names.contains("type")) throw InvalidConfig("'type' is reserved for the type predicate");
    if (!relation_names.contains(containment_relation))
        throw InvalidConfig("containment relation '" + containment_relation + "' is not among the relations");
    for (const auto* names : {&entity_type_names, &text_property_names, &relation_names})
        for (const std::string& name : *names)
            if (!Iri::is_valid(schema_namespace + name) || !Iri::is_valid(base_namespace + "type/" + name))
                throw InvalidConfig("'" + name + "' cannot be used in an IRI");
}

std::optional<std::string_view> ProcessSchema::predicate_name(const Iri& predicate) const {
    const std::string& text = predicate.str();
    if (!text.starts_with(schema_namespace)) return std::nullopt;
    return std::string_view(text).substr(schema_namespace.size());
}

bool ProcessSchema::is_text_property(const Iri& predicate) const {
    const auto name = predicate_name(predicate);
    return name && text_property_names.contains(*name);
}

bool ProcessSchema::is_relation(const Iri& predicate) const {
    const auto name = predicate_name(predicate);
    return name && relation_names.contains(*name);
}

} // namespace procevo
