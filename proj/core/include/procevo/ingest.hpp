#ifndef PROCEVO_INGEST_HPP
#define PROCEVO_INGEST_HPP

#include "procevo/schema.hpp"
#include "procevo/version_repository.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace procevo {

struct IngestIssue {
    std::string file;
    std::string message;

    friend bool operator==(const IngestIssue&, const IngestIssue&) = default;
};

/// Accounting for one corpus load; attempted == loaded + failed.size().
struct IngestReport {
    std::size_t attempted = 0;
    std::size_t loaded = 0;
    std::vector<IngestIssue> failed;
    std::vector<IngestIssue> warnings;
};

struct IngestResult {
    VersionRepository repository;
    IngestReport report;
};

/// Loads every `NNNN.xml` file of `corpus_directory` in ascending version
/// order. Metadata comes from the optional `versions.tsv` (version,
/// timestamp, author, comment, optional release label). Versions whose XML
/// cannot be converted are skipped and listed in the report.
///
/// Throws MissingCorpus when the directory is absent or has no version
/// files, MetadataMismatch when metadata references a missing file or two
/// files carry the same version number.
IngestResult ingest_corpus(const std::filesystem::path& corpus_directory, const ProcessSchema& schema);

} // namespace procevo

#endif
