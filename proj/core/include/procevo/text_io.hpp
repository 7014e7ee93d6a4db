#ifndef PROCEVO_TEXT_IO_HPP
#define PROCEVO_TEXT_IO_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace procevo::text_io {

/// Whole file as bytes. Throws StorageError.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// TSV field escaping: backslash, tab, newline and carriage return become
/// `\\`, `\t`, `\n`, `\r`.
std::string escape_field(std::string_view field);
/// Splits on tabs and unescapes each field. Throws ParseError.
std::vector<std::string> split_tsv(std::string_view line, std::size_t line_number);

} // namespace procevo::text_io

#endif
