#ifndef PROCEVO_BENCH_GRAPHS_HPP
#define PROCEVO_BENCH_GRAPHS_HPP

#include "procevo/generator.hpp"
#include "procevo/process_xml.hpp"

#include <cstdio>
#include <map>
#include <string>

namespace procevo::bench {

// First and last version of a two-version generated corpus.
struct GraphPair {
    Graph base;
    Graph target;
};

inline GraphPair generated_pair(std::uint32_t entities, double changes) {
    GeneratorConfig config;
    config.seed = 42;
    config.version_count = 2;
    config.module_count = entities / 80 + 1;
    config.initial_entity_count = entities;
    config.changes_per_version = changes;
    std::map<std::string, std::string> files;
    generate(config, [&](const std::string& n, const std::string& c) { files[n] = c; });
    const ProcessSchema schema = ProcessSchema::default_schema();
    return {parse_process_xml(files.at("0001.xml"), schema, schema.base_namespace).graph,
            parse_process_xml(files.at("0002.xml"), schema, schema.base_namespace).graph};
}

} // namespace procevo::bench

#endif
