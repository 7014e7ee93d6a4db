#include "bench_graphs.hpp"

#include "procevo/query.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace procevo;

const std::map<std::string, std::string> kPrefixes{{"schema", "urn:procevo:schema#"}};

void BM_QueryJoin(benchmark::State& state) {
    const Graph g = bench::generated_pair(2500, 0).base;
    const query::Query q = query::parse(
        "SELECT ?m ?n WHERE { ?m schema:contains ?e . ?e schema:responsible ?r . ?r schema:name ?n }", kPrefixes);
    for (auto _ : state) benchmark::DoNotOptimize(query::evaluate(g, q));
}
BENCHMARK(BM_QueryJoin)->Unit(benchmark::kMillisecond);

void BM_QueryRegexOnComparison(benchmark::State& state) {
    const bench::GraphPair pair = bench::generated_pair(2500, 200);
    const ComparisonModel cm = compare(pair.base, pair.target);
    const query::Query q = query::parse(
        "SELECT ?e ?old ?new WHERE { ?e schema:name ?old ONLYBASE . ?e schema:name ?new ONLYTARGET "
        "FILTER(regex(?new, \"[0-9]+$\")) }",
        kPrefixes);
    for (auto _ : state) benchmark::DoNotOptimize(query::evaluate(cm, q));
}
BENCHMARK(BM_QueryRegexOnComparison)->Unit(benchmark::kMillisecond);

} // namespace
