#include "procevo/membership.hpp"

namespace procevo {

const std::set<Iri>& ModuleMembership::modules_of(const Iri& entity) const {
    static const std::set<Iri> kNone;
    const auto it = modules_of_entity.find(entity);
    return it == modules_of_entity.end() ? kNone : it->second;
}

ModuleMembership module_membership(const Graph& graph, const ProcessSchema& schema) {
    ModuleMembership membership;
    const Iri contains = schema.containment_predicate();
    for (const Statement& s : graph) {
        if (s.predicate != contains || !is_iri(s.object)) continue;
        const Iri& entity = std::get<Iri>(s.object);
        membership.modules_of_entity[entity].insert(s.subject);
        membership.entities_of_module[s.subject].insert(entity);
    }
    return membership;
}

std::vector<Iri> entities_of(const Graph& graph, const ProcessSchema& schema) {
    const Iri type = schema.type_predicate();
    std::vector<Iri> entities;
    for (const Statement& s : graph)
        if (s.predicate == type && (entities.empty() || entities.back() != s.subject)) entities.push_back(s.subject);
    return entities;
}

const std::set<Iri>& attributed_modules(const ChangeRecord& record, const ModuleMembership& at_to_version,
                                        const ModuleMembership& at_from_version) {
    const std::set<Iri>& later = at_to_version.modules_of(record.entity);
    if (!later.empty()) return later;
    return at_from_version.modules_of(record.entity);
}

} // namespace procevo
