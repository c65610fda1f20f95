#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tenet::csv {

// Splits one CSV record. Double-quoted fields may contain commas and doubled
// quotes. Throws DataError on an unterminated quote.
std::vector<std::string> split_record(std::string_view line);

// Quotes a field if it contains a comma, quote or newline.
std::string escape(std::string_view field);

// Shortest round-trip representation of a double.
std::string format_double(double value);

// Parses a full double; throws DataError mentioning `what` on failure.
double parse_double(std::string_view text, std::string_view what);

// Reads lines, dropping a trailing '\r'. Returns false at end of stream.
bool read_line(std::istream& in, std::string& line);

}  // namespace tenet::csv
