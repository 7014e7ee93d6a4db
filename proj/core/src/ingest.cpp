#include "procevo/ingest.hpp"

#include "procevo/error.hpp"
#include "procevo/ntriples.hpp"
#include "procevo/process_xml.hpp"
#include "procevo/text_io.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace procevo {

namespace {

std::optional<VersionNumber> version_from_file_name(const std::string& name) {
    if (!name.ends_with(".xml")) return std::nullopt;
    const std::string_view digits = std::string_view(name).substr(0, name.size() - 4);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return std::nullopt;
    VersionNumber version = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), version);
    if (ec != std::errc{} || version == 0) return std::nullopt;
    return version;
}

std::map<VersionNumber, VersionMeta> read_metadata(const std::filesystem::path& path) {
    std::map<VersionNumber, VersionMeta> rows;
    const std::string text = text_io::read_file(path);
    std::size_t number = 0;
    for (std::string_view line : ntriples::split_lines(text)) {
        ++number;
        if (line.empty() || line == "\r" || line.front() == '#') continue;
        const auto fields = text_io::split_tsv(line, number);
        VersionMeta meta;
        const std::string& first = fields.front();
        const auto [end, ec] = std::from_chars(first.data(), first.data() + first.size(), meta.version);
        if (ec != std::errc{} || end != first.data() + first.size()) {
            if (number == 1) continue; // header row
            throw ParseError(number, "versions.tsv: bad version number '" + first + "'");
        }
        if (fields.size() < 4 || fields.size() > 5)
            throw ParseError(number, "versions.tsv: expected 4 or 5 columns");
        meta.timestamp = fields[1];
        if (!meta.timestamp.empty() && !parse_iso8601(meta.timestamp))
            throw ParseError(number, "versions.tsv: invalid ISO-8601 timestamp '" + meta.timestamp + "'");
        meta.author = fields[2];
        meta.comment = fields[3];
        if (fields.size() == 5 && !fields[4].empty()) meta.release = fields[4];
        if (!rows.emplace(meta.version, meta).second)
            throw ParseError(number, "versions.tsv: duplicate row for version " + std::to_string(meta.version));
    }
    return rows;
}

} // namespace

IngestResult ingest_corpus(const std::filesystem::path& corpus_directory, const ProcessSchema& schema) {
    if (!std::filesystem::is_directory(corpus_directory))
        throw MissingCorpus("corpus directory not found: " + corpus_directory.string());

    std::map<VersionNumber, std::filesystem::path> files;
    for (const auto& item : std::filesystem::directory_iterator(corpus_directory)) {
        if (!item.is_regular_file()) continue;
        const std::string name = item.path().filename().string();
        const auto version = version_from_file_name(name);
        if (!version) continue;
        if (!files.emplace(*version, item.path()).second)
            throw MetadataMismatch("two files carry version " + std::to_string(*version) + ": " +
                                   files.at(*version).filename().string() + ", " + name);
    }
    if (files.empty()) throw MissingCorpus("no NNNN.xml version files in " + corpus_directory.string());

    std::map<VersionNumber, VersionMeta> metadata;
    if (const auto tsv = corpus_directory / "versions.tsv"; std::filesystem::is_regular_file(tsv)) {
        metadata = read_metadata(tsv);
        for (const auto& [version, meta] : metadata)
            if (!files.contains(version))
                throw MetadataMismatch("versions.tsv references version " + std::to_string(version) +
                                       " but no such file exists");
    }

    IngestResult result{VersionRepository(schema), {}};
    IngestReport& report = result.report;
    for (const auto& [version, path] : files) {
        ++report.attempted;
        const std::string name = path.filename().string();
        ProcessXmlResult parsed;
        try {
            parsed = parse_process_xml(text_io::read_file(path), schema, schema.base_namespace);
        } catch (const Error& e) {
            report.failed.push_back({name, e.what()});
            continue;
        }
        for (std::string& w : parsed.warnings) report.warnings.push_back({name, std::move(w)});

        VersionMeta meta;
        if (const auto it = metadata.find(version); it != metadata.end()) meta = it->second;
        meta.version = version;
        result.repository.commit(parsed.graph, std::move(meta));
        ++report.loaded;
    }
    return result;
}

} // namespace procevo
