#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace corpusranker {

// One CSV record plus the physical line it started on (1-based). Quoted
// fields may span lines, so consecutive records can differ by more than one.
struct CsvRow {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

// RFC 4180 reader: comma-delimited, double-quote quoting, quotes escaped by
// doubling, CRLF or LF row endings, optional UTF-8 BOM. A quote that opens
// mid-field or a field that ends inside quotes raises ParseError with the
// offending line.
std::vector<CsvRow> parse_csv(const std::string& content);

// Reads the whole file and parses it. Missing/unreadable file -> IoError.
std::vector<CsvRow> parse_csv_file(const std::string& path);

// RFC 4180 writer, LF endings. Fields containing comma, quote, CR or LF are
// quoted; embedded quotes doubled.
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);
std::string csv_escape(const std::string& field);

}  // namespace corpusranker
