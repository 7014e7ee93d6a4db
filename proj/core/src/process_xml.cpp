#include "procevo/process_xml.hpp"

#include "procevo/error.hpp"

#include <expat.h>

#include <cstring>
#include <memory>
#include <optional>

namespace procevo {

namespace {

struct ParserDeleter {
    void operator()(XML_Parser p) const noexcept { XML_ParserFree(p); }
};

const char* attribute(const XML_Char** attrs, const char* name) {
    for (std::size_t i = 0; attrs[i] != nullptr; i += 2)
        if (std::strcmp(attrs[i], name) == 0) return attrs[i + 1];
    return nullptr;
}

// Builds statements while expat walks the document. Errors thrown inside
// callbacks would unwind through C code, so they are parked here and the
// parse is stopped instead.
class ModelBuilder {
public:
    ModelBuilder(const ProcessSchema& schema, std::string_view base, XML_Parser parser)
        : schema_(schema), base_(base), parser_(parser), type_predicate_(schema.type_predicate()) {}

    void start(const XML_Char* name, const XML_Char** attrs) {
        ++depth_;
        if (depth_ == 1) {
            if (std::strcmp(name, "model") != 0) fail_domain("root element must be <model>, found <" + std::string(name) + ">");
            return;
        }
        if (depth_ == 2) {
            if (std::strcmp(name, "entity") != 0) {
                warn("ignoring <" + std::string(name) + "> outside an entity");
                return;
            }
            start_entity(attrs);
            return;
        }
        if (depth_ == 3 && current_entity_) {
            if (std::strcmp(name, "property") == 0) {
                const char* prop = attribute(attrs, "name");
                if (prop == nullptr) {
                    warn("property without name in entity '" + *current_id_ + "'");
                } else {
                    property_name_ = prop;
                    property_text_.clear();
                }
                return;
            }
            if (std::strcmp(name, "ref") == 0) {
                add_ref(attrs);
                return;
            }
        }
        if (depth_ == 4 && property_name_) {
            warn("markup inside property '" + *property_name_ + "' of entity '" + *current_id_ + "'");
            return;
        }
        warn("ignoring unexpected element <" + std::string(name) + ">");
    }

    void end(const XML_Char*) {
        if (depth_ == 3 && property_name_) finish_property();
        if (depth_ == 2) {
            current_entity_.reset();
            current_id_.reset();
        }
        --depth_;
    }

    void text(const XML_Char* data, int length) {
        if (property_name_ && depth_ == 3) property_text_.append(data, static_cast<std::size_t>(length));
    }

    void resolve_dangling_refs() {
        for (const auto& [source, target] : refs_)
            if (!ids_.contains(target))
                warn("entity '" + source + "' references unknown entity '" + target + "'");
    }

    ProcessXmlResult take_result() {
        ProcessXmlResult result;
        result.graph = std::move(graph_);
        result.entity_count = ids_.size();
        result.warnings = std::move(warnings_);
        return result;
    }

    std::exception_ptr error;

private:
    void fail_domain(std::string message) {
        try {
            throw Error(std::move(message));
        } catch (...) {
            stop(std::current_exception());
        }
    }

    template <class Fn>
    void guarded(Fn&& fn) {
        try {
            fn();
        } catch (...) {
            stop(std::current_exception());
        }
    }

    void stop(std::exception_ptr e) {
        if (!error) error = std::move(e);
        XML_StopParser(parser_, XML_FALSE);
    }

    void warn(std::string message) {
        warnings_.push_back("line " + std::to_string(XML_GetCurrentLineNumber(parser_)) + ": " + std::move(message));
    }

    Iri entity_iri(std::string_view id) const { return Iri(std::string(base_) + std::string(id)); }

    void start_entity(const XML_Char** attrs) {
        const char* id = attribute(attrs, "id");
        const char* type = attribute(attrs, "type");
        if (id == nullptr || type == nullptr) {
            fail_domain("line " + std::to_string(XML_GetCurrentLineNumber(parser_)) + ": entity needs id and type");
            return;
        }
        guarded([&] {
            if (!ids_.emplace(id).second) throw DuplicateEntityId("duplicate entity id '" + std::string(id) + "'");
            current_id_ = id;
            current_entity_ = entity_iri(id);
            if (!schema_.entity_type_names.contains(std::string_view(type)))
                warn("entity '" + std::string(id) + "' has unknown type '" + type + "'");
            graph_.insert({*current_entity_, type_predicate_, Iri(std::string(base_) + "type/" + type)});
        });
    }

    void add_ref(const XML_Char** attrs) {
        const char* rel = attribute(attrs, "name");
        const char* target = attribute(attrs, "target");
        if (rel == nullptr || target == nullptr) {
            warn("ref without name or target in entity '" + *current_id_ + "'");
            return;
        }
        if (!schema_.relation_names.contains(std::string_view(rel))) {
            warn("unknown relation '" + std::string(rel) + "' in entity '" + *current_id_ + "'");
            return;
        }
        guarded([&] {
            graph_.insert({*current_entity_, schema_.predicate(rel), entity_iri(target)});
            refs_.emplace_back(*current_id_, target);
        });
    }

    void finish_property() {
        if (!schema_.text_property_names.contains(*property_name_)) {
            warn("unknown property '" + *property_name_ + "' in entity '" + *current_id_ + "'");
        } else {
            guarded([&] { graph_.insert({*current_entity_, schema_.predicate(*property_name_), Literal(property_text_)}); });
        }
        property_name_.reset();
    }

    const ProcessSchema& schema_;
    std::string_view base_;
    XML_Parser parser_;
    Iri type_predicate_;
    int depth_ = 0;
    std::optional<Iri> current_entity_;
    std::optional<std::string> current_id_;
    std::optional<std::string> property_name_;
    std::string property_text_;
    std::set<std::string, std::less<>> ids_;
    std::vector<std::pair<std::string, std::string>> refs_;
    Graph graph_;
    std::vector<std::string> warnings_;
};

} // namespace

ProcessXmlResult parse_process_xml(std::string_view document, const ProcessSchema& schema,
                                   std::string_view base_namespace) {
    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
    if (!parser) throw Error("cannot create XML parser");
    ModelBuilder builder(schema, base_namespace, parser.get());
    XML_SetUserData(parser.get(), &builder);
    XML_SetElementHandler(
        parser.get(),
        [](void* data, const XML_Char* name, const XML_Char** attrs) { static_cast<ModelBuilder*>(data)->start(name, attrs); },
        [](void* data, const XML_Char* name) { static_cast<ModelBuilder*>(data)->end(name); });
    XML_SetCharacterDataHandler(parser.get(), [](void* data, const XML_Char* s, int len) {
        static_cast<ModelBuilder*>(data)->text(s, len);
    });

    const XML_Status status = XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE);
    if (builder.error) std::rethrow_exception(builder.error);
    if (status != XML_STATUS_OK) {
        throw XmlSyntaxError(XML_GetCurrentLineNumber(parser.get()),
                             XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
    builder.resolve_dangling_refs();
    return builder.take_result();
}

ProcessModel reconstruct_process_model(const Graph& graph, const ProcessSchema& schema,
                                       std::string_view base_namespace) {
    const std::string type_prefix = std::string(base_namespace) + "type/";
    const Iri type_predicate = schema.type_predicate();
    auto local = [&](const Iri& iri) -> std::optional<std::string> {
        if (!iri.str().starts_with(base_namespace)) return std::nullopt;
        return iri.str().substr(base_namespace.size());
    };

    ProcessModel model;
    for (const Statement& s : graph) {
        if (s.predicate != type_predicate || !is_iri(s.object)) continue;
        const auto id = local(s.subject);
        const std::string& type = std::get<Iri>(s.object).str();
        if (id && type.starts_with(type_prefix)) model.entities[*id].type = type.substr(type_prefix.size());
    }
    for (const Statement& s : graph) {
        const auto id = local(s.subject);
        if (!id) continue;
        const auto entity = model.entities.find(*id);
        if (entity == model.entities.end()) continue;
        const auto name = schema.predicate_name(s.predicate);
        if (!name) continue;
        if (schema.text_property_names.contains(*name) && is_literal(s.object)) {
            entity->second.properties[std::string(*name)].insert(std::get<Literal>(s.object).lexical());
        } else if (schema.relation_names.contains(*name) && is_iri(s.object)) {
            if (const auto target = local(std::get<Iri>(s.object)))
                entity->second.refs.emplace(std::string(*name), *target);
        }
    }
    return model;
}

std::string xml_escape(std::string_view text, bool attribute) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '\r': out += "&#13;"; break;
        case '"':
            if (attribute)
                out += "&quot;";
            else
                out.push_back(c);
            break;
        case '\n':
            if (attribute)
                out += "&#10;";
            else
                out.push_back(c);
            break;
        case '\t':
            if (attribute)
                out += "&#9;";
            else
                out.push_back(c);
            break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string write_process_xml(const ProcessModel& model) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<model>\n";
    for (const auto& [id, entity] : model.entities) {
        out += "  <entity id=\"" + xml_escape(id, true) + "\" type=\"" + xml_escape(entity.type, true) + "\">\n";
        for (const auto& [name, values] : entity.properties)
            for (const std::string& value : values)
                out += "    <property name=\"" + xml_escape(name, true) + "\">" + xml_escape(value, false) +
                       "</property>\n";
        for (const auto& [name, target] : entity.refs)
            out += "    <ref name=\"" + xml_escape(name, true) + "\" target=\"" + xml_escape(target, true) + "\"/>\n";
        out += "  </entity>\n";
    }
    out += "</model>\n";
    return out;
}

} // namespace procevo
