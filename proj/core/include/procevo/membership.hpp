#ifndef PROCEVO_MEMBERSHIP_HPP
#define PROCEVO_MEMBERSHIP_HPP

#include "procevo/change_record.hpp"
#include "procevo/graph.hpp"
#include "procevo/schema.hpp"

#include <map>
#include <set>
#include <vector>

namespace procevo {

/// Which modules contain which entities in one version: entity e is in
/// module m iff (m, containment, e) is a statement of the version.
struct ModuleMembership {
    std::map<Iri, std::set<Iri>> modules_of_entity;
    std::map<Iri, std::set<Iri>> entities_of_module;

    const std::set<Iri>& modules_of(const Iri& entity) const;
};

ModuleMembership module_membership(const Graph& graph, const ProcessSchema& schema);

/// Entities of a version: distinct subjects of type statements, sorted.
std::vector<Iri> entities_of(const Graph& graph, const ProcessSchema& schema);

/// Modules a change is attributed to: membership at the later version of
/// the pair, falling back to the earlier version when the entity is in no
/// module there (the usual case for deletions). Empty means unassigned.
const std::set<Iri>& attributed_modules(const ChangeRecord& record, const ModuleMembership& at_to_version,
                                        const ModuleMembership& at_from_version);

} // namespace procevo

#endif
