#include "procevo/text_io.hpp"

#include "procevo/error.hpp"

#include <fstream>
#include <sstream>

namespace procevo::text_io {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StorageError("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw StorageError("write failed: " + path.string());
}

std::string escape_field(std::string_view field) {
    std::string out;
    out.reserve(field.size());
    for (char c : field) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '\t': out += "\\t"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::vector<std::string> split_tsv(std::string_view line, std::size_t line_number) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> fields(1);
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '\t') {
            fields.emplace_back();
        } else if (c == '\\') {
            if (++i == line.size()) throw ParseError(line_number, "dangling backslash");
            switch (line[i]) {
            case '\\': fields.back().push_back('\\'); break;
            case 't': fields.back().push_back('\t'); break;
            case 'n': fields.back().push_back('\n'); break;
            case 'r': fields.back().push_back('\r'); break;
            default: throw ParseError(line_number, std::string("unknown escape \\") + line[i]);
            }
        } else {
            fields.back().push_back(c);
        }
    }
    return fields;
}

} // namespace procevo::text_io
