#include "cli.hpp"

#include "procevo/analytics.hpp"
#include "procevo/change_detection.hpp"
#include "procevo/comparison.hpp"
#include "procevo/error.hpp"
#include "procevo/generator.hpp"
#include "procevo/ingest.hpp"
#include "procevo/ntriples.hpp"
#include "procevo/query.hpp"
#include "procevo/svg.hpp"
#include "procevo/text_io.hpp"
#include "procevo/version_repository.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <map>
#include <optional>

namespace procevo::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string repo;
    std::string corpus;
    std::string schema_file;
    std::string out;
    std::string config;
    std::string query_file;
    std::string metric;
    std::string x_axis = "version";
    std::string module;
    std::vector<std::string> kinds;
    std::string format = "csv";
    bool include_entailed = false;
    bool json = false;
    bool plan = false;
    bool changes = false;
    double bin_days = 1;
    std::optional<VersionNumber> version;
    std::optional<VersionNumber> base;
    std::optional<VersionNumber> target;
};

std::filesystem::path repo_path(const Options& o) {
    if (!o.repo.empty()) return o.repo;
    if (const char* env = std::getenv("PROCEVO_REPO"); env != nullptr && *env != '\0') return env;
    throw UsageError("no repository: pass --repo DIR or set PROCEVO_REPO");
}

void emit(const Options& o, std::ostream& out, const std::string& content) {
    if (o.out.empty()) {
        out << content;
    } else {
        text_io::write_file(o.out, content);
    }
}

std::string table(const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    std::string s;
    for (const auto& [k, v] : rows) s += k + std::string(width - k.size() + 2, ' ') + v + "\n";
    return s;
}

// --- ingest -----------------------------------------------------------------

int cmd_ingest(const Options& o, std::ostream& out) {
    ProcessSchema schema = ProcessSchema::default_schema();
    if (!o.schema_file.empty()) schema = ProcessSchema::parse(text_io::read_file(o.schema_file));
    const auto path = repo_path(o);
    IngestResult result = ingest_corpus(o.corpus, schema);
    if (result.report.loaded == 0) throw Error("no version of " + o.corpus + " could be read");
    result.repository.save(path);
    const IngestReport& r = result.report;
    if (o.json) {
        json j;
        j["attempted"] = r.attempted;
        j["loaded"] = r.loaded;
        j["failed"] = json::array();
        for (const IngestIssue& f : r.failed) j["failed"].push_back({{"file", f.file}, {"message", f.message}});
        j["warnings"] = json::array();
        for (const IngestIssue& w : r.warnings) j["warnings"].push_back({{"file", w.file}, {"message", w.message}});
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "attempted=" << r.attempted << " loaded=" << r.loaded << " failed=" << r.failed.size() << "\n";
    std::vector<std::pair<std::string, std::string>> rows{{"attempted", std::to_string(r.attempted)},
                                                          {"loaded", std::to_string(r.loaded)},
                                                          {"failed", std::to_string(r.failed.size())},
                                                          {"warnings", std::to_string(r.warnings.size())}};
    out << table(rows);
    for (const IngestIssue& f : r.failed) out << "failed  " << f.file << "  " << f.message << "\n";
    return kExitOk;
}

// --- list -------------------------------------------------------------------

int cmd_list(const Options& o, std::ostream& out) {
    const VersionRepository repo = VersionRepository::load(repo_path(o));
    if (o.json) {
        json j = json::array();
        for (const VersionMeta& m : repo.versions()) {
            json row{{"version", m.version}, {"timestamp", m.timestamp}, {"author", m.author}, {"comment", m.comment},
                     {"snapshot", repo.is_snapshot(m.version)}};
            row["release"] = m.release ? json(*m.release) : json(nullptr);
            j.push_back(std::move(row));
        }
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "version\ttimestamp\tauthor\trelease\tstorage\n";
    for (const VersionMeta& m : repo.versions())
        out << m.version << "\t" << m.timestamp << "\t" << m.author << "\t" << m.release.value_or("") << "\t"
            << (repo.is_snapshot(m.version) ? "snapshot" : "delta") << "\n";
    return kExitOk;
}

// --- export / diff ----------------------------------------------------------

int cmd_export(const Options& o, std::ostream& out) {
    const VersionRepository repo = VersionRepository::load(repo_path(o));
    if (o.changes == o.version.has_value()) throw UsageError("export needs exactly one of --version N or --changes");
    if (o.version) {
        emit(o, out, ntriples::serialize_graph(repo.checkout(*o.version)));
        return kExitOk;
    }
    if (o.format == "nt") {
        emit(o, out, ntriples::serialize_graph(repo.change_record_graph()));
    } else if (o.format == "csv") {
        emit(o, out, export_changes_csv(repo.load_change_records()));
    } else {
        throw UsageError("--format must be csv or nt");
    }
    return kExitOk;
}

ComparisonModel comparison_of(const VersionRepository& repo, VersionNumber base, VersionNumber target) {
    ComparisonModel cm = compare(repo.checkout(base), repo.checkout(target));
    cm.base_version = base;
    cm.target_version = target;
    return cm;
}

int cmd_diff(const Options& o, std::ostream& out) {
    if (!o.base || !o.target) throw UsageError("diff needs --base N and --target M");
    const VersionRepository repo = VersionRepository::load(repo_path(o));
    emit(o, out, export_comparison(comparison_of(repo, *o.base, *o.target)));
    return kExitOk;
}

// --- detect -----------------------------------------------------------------

int cmd_detect(const Options& o, std::ostream& out) {
    const auto path = repo_path(o);
    VersionRepository repo = VersionRepository::load(path);
    const DetectionResult result = detect_and_store_history(repo);
    repo.save(path);
    std::map<ChangeKind, std::size_t> counts;
    for (ChangeKind k : kAllChangeKinds) counts[k] = 0;
    std::size_t entailed = 0;
    for (const ChangeRecord& r : result.records) {
        ++counts[r.kind];
        if (r.entailed) ++entailed;
    }
    if (o.json) {
        json j;
        j["records"] = result.records.size();
        j["entailed"] = entailed;
        for (const auto& [kind, n] : counts) j["by_kind"][std::string(to_string(kind))] = n;
        j["warnings"] = json::array();
        for (const SchemaWarning& w : result.warnings)
            j["warnings"].push_back({{"from", w.from_version},
                                     {"to", w.to_version},
                                     {"statement", ntriples::statement_line(w.statement)},
                                     {"message", w.message}});
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& [kind, n] : counts) rows.emplace_back(std::string(to_string(kind)), std::to_string(n));
    rows.emplace_back("total", std::to_string(result.records.size()));
    rows.emplace_back("entailed", std::to_string(entailed));
    rows.emplace_back("warnings", std::to_string(result.warnings.size()));
    out << table(rows);
    return kExitOk;
}

// --- query ------------------------------------------------------------------

int cmd_query(const Options& o, std::ostream& out) {
    const bool single = o.version.has_value();
    const bool pair = o.base.has_value() || o.target.has_value();
    if (single == pair || (pair && !(o.base && o.target)))
        throw UsageError("query needs either --version N or both --base N and --target M");
    const VersionRepository repo = VersionRepository::load(repo_path(o));
    const std::map<std::string, std::string> prefixes{{"schema", repo.schema().schema_namespace},
                                                      {"base", repo.schema().base_namespace},
                                                      {"change", std::string(change_vocab::kNamespace)}};
    query::Query q;
    try {
        q = query::parse(text_io::read_file(o.query_file), prefixes);
    } catch (const MalformedQuery& e) {
        throw MalformedQuery(o.query_file + ": " + e.what());
    }

    std::vector<query::Solution> solutions;
    std::string plan;
    if (single) {
        const Graph g = repo.checkout(*o.version);
        if (o.plan) plan = query::explain(g, q);
        solutions = query::evaluate(g, q);
    } else {
        const ComparisonModel cm = comparison_of(repo, *o.base, *o.target);
        if (o.plan) plan = query::explain(cm, q);
        solutions = query::evaluate(cm, q);
    }
    std::string text;
    if (o.plan) text += plan;
    if (o.json) {
        json j = json::array();
        for (const query::Solution& s : solutions) {
            json row = json::object();
            for (const auto& [name, term] : s) row[name] = to_string(term);
            j.push_back(std::move(row));
        }
        text += j.dump(2) + "\n";
    } else {
        text += query::format_table(q, solutions);
    }
    emit(o, out, text);
    return kExitOk;
}

// --- metrics / plot ---------------------------------------------------------

XAxis parse_axis(const std::string& x) {
    if (x == "version") return XAxis::Version;
    if (x == "time") return XAxis::CalendarTime;
    throw UsageError("--x must be version or time");
}

ChangeKindFilter parse_filter(const Options& o) {
    ChangeKindFilter filter;
    filter.include_entailed = o.include_entailed;
    if (!o.kinds.empty()) {
        filter.kinds.clear();
        for (const std::string& name : o.kinds) {
            const auto kind = parse_change_kind(name);
            if (!kind) throw UsageError("unknown change kind '" + name + "'");
            filter.kinds.insert(*kind);
        }
    }
    return filter;
}

Iri module_iri(const VersionRepository& repo, const std::string& module) {
    if (module.empty()) throw UsageError("--metric matrix needs --module ID");
    if (module.find(':') != std::string::npos && Iri::is_valid(module)) return Iri(module);
    if (!Iri::is_valid(repo.schema().base_namespace + module)) throw UsageError("invalid module id '" + module + "'");
    return repo.schema().entity_iri(module);
}

std::int64_t bin_width(const Options& o) {
    if (!(o.bin_days > 0)) throw UsageError("--bin-days must be positive");
    return static_cast<std::int64_t>(o.bin_days * static_cast<double>(kSecondsPerDay));
}

int cmd_metrics(const Options& o, std::ostream& out, bool plot) {
    const VersionRepository repo = VersionRepository::load(repo_path(o));
    const XAxis axis = parse_axis(o.x_axis);
    const ChangeKindFilter filter = parse_filter(o);
    if (o.metric == "complexity") {
        const auto series = entity_count_series(repo, axis);
        emit(o, out, plot ? svg::render_series(series, svg::PlotKind::Line, "Entities per process module")
                          : series_csv(series));
    } else if (o.metric == "changes") {
        const auto series = change_distribution(repo, axis, filter);
        emit(o, out, plot ? svg::render_series(series, svg::PlotKind::Bubble, "Changes per process module")
                          : series_csv(series));
    } else if (o.metric == "density") {
        const MetricSeries series = version_density(repo, bin_width(o));
        emit(o, out, plot ? svg::render_series({series}, svg::PlotKind::Bar, "Version density") : series_csv({series}));
    } else if (o.metric == "matrix") {
        const Iri module = module_iri(repo, o.module);
        const ChangeMatrix matrix = entity_change_matrix(repo, module, filter);
        emit(o, out, plot ? svg::render_matrix(matrix, "Changes to entities of " + module.str()) : matrix_csv(matrix));
    } else {
        throw UsageError("--metric must be complexity, changes, density or matrix");
    }
    return kExitOk;
}

// --- generate ---------------------------------------------------------------

int cmd_generate(const Options& o, std::ostream& out) {
    if (o.out.empty()) throw UsageError("generate needs --out DIR");
    GeneratorConfig config;
    try {
        config = GeneratorConfig::parse(text_io::read_file(o.config));
    } catch (const ParseError& e) {
        throw InvalidConfig(o.config + ": " + e.what());
    }
    const GeneratedHistory history = generate_corpus(config, o.out);
    const std::size_t first = history.entity_counts.begin()->second;
    const std::size_t last = history.entity_counts.rbegin()->second;
    if (o.json) {
        json j{{"versions", history.versions.size()},
               {"malformed", history.malformed},
               {"ground_truth_records", history.ground_truth.size()},
               {"first_entity_count", first},
               {"last_entity_count", last}};
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << table({{"versions", std::to_string(history.versions.size())},
                  {"malformed", std::to_string(history.malformed.size())},
                  {"ground_truth_records", std::to_string(history.ground_truth.size())},
                  {"entities", std::to_string(first) + " -> " + std::to_string(last)}});
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"procevo: process-model evolution toolkit", "procevo"};
    app.require_subcommand(1);
    Options o;

    auto add_repo = [&](CLI::App* sub) { sub->add_option("--repo", o.repo, "Repository directory (default: $PROCEVO_REPO)"); };
    auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Machine-readable output"); };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Write the result to this file"); };

    CLI::App* ingest = app.add_subcommand("ingest", "Load a corpus directory into a repository");
    ingest->add_option("corpus", o.corpus, "Corpus directory")->required();
    add_repo(ingest);
    ingest->add_option("--schema", o.schema_file, "Schema file (default: built-in schema)");
    add_json(ingest);

    CLI::App* list = app.add_subcommand("list", "List stored versions");
    add_repo(list);
    add_json(list);

    CLI::App* exp = app.add_subcommand("export", "Export a version graph or the change records");
    add_repo(exp);
    exp->add_option("--version", o.version, "Version to export");
    exp->add_flag("--changes", o.changes, "Export change records instead of a version");
    exp->add_option("--format", o.format, "Change record format: csv or nt")->check(CLI::IsMember({"csv", "nt"}));
    add_out(exp);

    CLI::App* diff = app.add_subcommand("diff", "Comparison export of two versions");
    add_repo(diff);
    diff->add_option("--base", o.base, "Base version")->required();
    diff->add_option("--target", o.target, "Target version")->required();
    add_out(diff);

    CLI::App* detect = app.add_subcommand("detect", "Detect and store changes between consecutive versions");
    add_repo(detect);
    add_json(detect);

    CLI::App* query = app.add_subcommand("query", "Evaluate a query on a version or a comparison");
    add_repo(query);
    query->add_option("--version", o.version, "Query this version");
    query->add_option("--base", o.base, "Base version of the comparison");
    query->add_option("--target", o.target, "Target version of the comparison");
    query->add_option("--query", o.query_file, "Query file")->required();
    query->add_flag("--plan", o.plan, "Print the join plan before the results");
    add_json(query);
    add_out(query);

    CLI::App* metrics = app.add_subcommand("metrics", "Evolution metrics as CSV");
    CLI::App* plot = app.add_subcommand("plot", "Evolution metrics as SVG");
    for (CLI::App* sub : {metrics, plot}) {
        add_repo(sub);
        sub->add_option("--metric", o.metric, "complexity, changes, density or matrix")
            ->required()
            ->check(CLI::IsMember({"complexity", "changes", "density", "matrix"}));
        sub->add_option("--x", o.x_axis, "x axis: version or time")->check(CLI::IsMember({"version", "time"}));
        sub->add_option("--module", o.module, "Module id or IRI (matrix)");
        sub->add_option("--kinds", o.kinds, "Change kinds to count")->delimiter(',');
        sub->add_flag("--include-entailed", o.include_entailed, "Also count entailed relation changes");
        sub->add_option("--bin-days", o.bin_days, "Density bin width in days");
        add_out(sub);
    }

    CLI::App* gen = app.add_subcommand("generate", "Write a synthetic corpus");
    gen->add_option("--config", o.config, "Generator config file")->required();
    add_out(gen);
    add_json(gen);

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << "run 'procevo --help' for usage\n";
        return kExitUsageError;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(o, out);
        if (list->parsed()) return cmd_list(o, out);
        if (exp->parsed()) return cmd_export(o, out);
        if (diff->parsed()) return cmd_diff(o, out);
        if (detect->parsed()) return cmd_detect(o, out);
        if (query->parsed()) return cmd_query(o, out);
        if (metrics->parsed()) return cmd_metrics(o, out, false);
        if (plot->parsed()) return cmd_metrics(o, out, true);
        if (gen->parsed()) return cmd_generate(o, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomainError;
    }
    return kExitUsageError;
}

} // namespace procevo::cli
