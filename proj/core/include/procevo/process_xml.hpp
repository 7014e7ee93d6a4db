#ifndef PROCEVO_PROCESS_XML_HPP
#define PROCEVO_PROCESS_XML_HPP

#include "procevo/graph.hpp"
#include "procevo/schema.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace procevo {

// Corpus XML dialect:
//
//   <model>
//     <entity id="a1" type="Activity">
//       <property name="name">Design</property>
//       <ref name="responsible" target="r1"/>
//     </entity>
//   </model>

struct ProcessEntity {
    std::string type;
    std::map<std::string, std::set<std::string>> properties;
    /// (relation name, target id)
    std::set<std::pair<std::string, std::string>> refs;

    friend bool operator==(const ProcessEntity&, const ProcessEntity&) = default;
};

/// Structured view of one model version, keyed by entity id.
struct ProcessModel {
    std::map<std::string, ProcessEntity> entities;

    friend bool operator==(const ProcessModel&, const ProcessModel&) = default;
};

struct ProcessXmlResult {
    Graph graph;
    std::size_t entity_count = 0;
    std::vector<std::string> warnings;
};

/// Maps one corpus XML document to statements:
///   <entity id="I" type="T">          -> (base:I, schema:type, base:type/T)
///   <property name="P">text</property> -> (base:I, schema:P, "text")
///   <ref name="R" target="J"/>         -> (base:I, schema:R, base:J)
/// Unknown types, property and relation names, stray elements and dangling
/// ref targets are reported as warnings; unknown properties and relations
/// produce no statement, dangling refs are kept.
///
/// Throws XmlSyntaxError for ill-formed XML, DuplicateEntityId, and
/// InvalidTerm when an id cannot form an IRI.
ProcessXmlResult parse_process_xml(std::string_view document, const ProcessSchema& schema,
                                   std::string_view base_namespace);

/// Reverse of the mapping above: rebuilds the entity structure from a graph.
/// Statements outside the mapping are ignored.
ProcessModel reconstruct_process_model(const Graph& graph, const ProcessSchema& schema,
                                       std::string_view base_namespace);

/// Serializes a model in the corpus dialect, entities ordered by id.
std::string write_process_xml(const ProcessModel& model);

std::string xml_escape(std::string_view text, bool attribute);

} // namespace procevo

#endif
