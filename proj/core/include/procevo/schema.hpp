#ifndef PROCEVO_SCHEMA_HPP
#define PROCEVO_SCHEMA_HPP

#include "procevo/term.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace procevo {

/// Vocabulary of a process-model dialect: which entity types, text
/// properties and relations exist, and which relation means "module contains
/// entity".
///
/// Predicates are minted as `schema_namespace + name`; the type predicate is
/// `schema_namespace + "type"`. Entity IRIs are `base_namespace + id` and type
/// objects are `base_namespace + "type/" + typeName`.
struct ProcessSchema {
    std::string schema_namespace = "urn:procevo:schema#";
    std::string base_namespace = "urn:procevo:model:";
    std::set<std::string, std::less<>> entity_type_names;
    std::set<std::string, std::less<>> text_property_names;
    std::set<std::string, std::less<>> relation_names;
    std::string containment_relation;

    /// ProcessModule/Activity/Product/Role/TextModule with name and
    /// description texts and a `contains` relation.
    static ProcessSchema default_schema();

    /// Reads the key/value schema file format (see README). Missing keys keep
    /// their default_schema() values. Throws ParseError or InvalidConfig.
    static ProcessSchema parse(std::string_view text);
    std::string to_text() const;

    /// Throws InvalidConfig when the name sets overlap, the containment
    /// relation is not a relation, or a namespace is not a valid IRI prefix.
    void validate() const;

    Iri type_predicate() const { return Iri(schema_namespace + "type"); }
    Iri predicate(std::string_view name) const { return Iri(schema_namespace + std::string(name)); }
    Iri containment_predicate() const { return predicate(containment_relation); }
    Iri entity_iri(std::string_view id) const { return Iri(base_namespace + std::string(id)); }
    Iri type_iri(std::string_view type_name) const { return Iri(base_namespace + "type/" + std::string(type_name)); }

    /// Local name of `predicate` when it lies in the schema namespace.
    std::optional<std::string_view> predicate_name(const Iri& predicate) const;
    bool is_text_property(const Iri& predicate) const;
    bool is_relation(const Iri& predicate) const;

    friend bool operator==(const ProcessSchema&, const ProcessSchema&) = default;
};

} // namespace procevo

#endif
