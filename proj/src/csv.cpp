#include "corpusranker/csv.hpp"

#include <fstream>
#include <sstream>

#include "corpusranker/errors.hpp"

namespace corpusranker {

std::vector<CsvRow> parse_csv(const std::string& content) {
    std::vector<CsvRow> rows;
    std::size_t i = 0;
    const std::size_t n = content.size();
    std::size_t line = 1;

    // Skip UTF-8 BOM if present.
    if (n >= 3 && content.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        i = 3;
    }

    while (i < n) {
        CsvRow row;
        row.line = line;
        std::string field;
        bool in_quotes = false;
        bool row_done = false;

        while (!row_done) {
            if (i >= n) {
                if (in_quotes) {
                    throw ParseError("unterminated quoted field", row.line);
                }
                break;
            }
            char c = content[i];
            if (in_quotes) {
                if (c == '"') {
                    if (i + 1 < n && content[i + 1] == '"') {
                        field.push_back('"');
                        i += 2;
                    } else {
                        in_quotes = false;
                        ++i;
                        // Only a delimiter, row end, or EOF may follow a closing quote.
                        if (i < n && content[i] != ',' && content[i] != '\r' &&
                            content[i] != '\n') {
                            throw ParseError("unexpected character after closing quote", line);
                        }
                    }
                } else {
                    if (c == '\n') ++line;
                    field.push_back(c);
                    ++i;
                }
            } else {
                switch (c) {
                    case '"':
                        if (!field.empty()) {
                            throw ParseError("quote opened in the middle of a field", line);
                        }
                        in_quotes = true;
                        ++i;
                        break;
                    case ',':
                        row.fields.push_back(std::move(field));
                        field.clear();
                        ++i;
                        break;
                    case '\r':
                        ++i;
                        if (i < n && content[i] == '\n') ++i;
                        ++line;
                        row_done = true;
                        break;
                    case '\n':
                        ++i;
                        ++line;
                        row_done = true;
                        break;
                    default:
                        field.push_back(c);
                        ++i;
                        break;
                }
            }
        }

        row.fields.push_back(std::move(field));
        // A lone trailing newline produces one spurious empty row; drop it.
        if (row.fields.size() == 1 && row.fields[0].empty() && i >= n && !rows.empty()) {
            break;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<CsvRow> parse_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str());
}

std::string csv_escape(const std::string& field) {
    bool needs_quotes = false;
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\r' || c == '\n') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(fields[i]);
    }
    out << '\n';
}

}  // namespace corpusranker
