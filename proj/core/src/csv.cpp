#include "procevo/csv.hpp"

#include "procevo/error.hpp"

namespace procevo::csv {

std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out.push_back(',');
        out += quote(fields[i]);
    }
    return out;
}

std::vector<std::vector<std::string>> parse(std::string_view document) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string field;
    std::size_t line = 1;
    std::size_t quote_line = 0;
    bool in_quotes = false;
    bool record_open = false;
    for (std::size_t i = 0; i < document.size(); ++i) {
        const char c = document[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < document.size() && document[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            quote_line = line;
            record_open = true;
            break;
        case ',':
            fields.push_back(std::move(field));
            field.clear();
            record_open = true;
            break;
        case '\r': break;
        case '\n':
            if (record_open || !field.empty()) {
                fields.push_back(std::move(field));
                records.push_back(std::move(fields));
            }
            field.clear();
            fields.clear();
            record_open = false;
            ++line;
            break;
        default:
            field.push_back(c);
            record_open = true;
        }
    }
    if (in_quotes) throw ParseError(quote_line, "unterminated quoted CSV field");
    if (record_open || !field.empty()) {
        fields.push_back(std::move(field));
        records.push_back(std::move(fields));
    }
    return records;
}

} // namespace procevo::csv
