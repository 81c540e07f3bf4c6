#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Internal helpers shared by the CSV readers.

namespace wn::detail {

// Reads exactly 2^bits numeric lines; blank lines are skipped, anything else
// is an error (strict line count, finite values only).
std::vector<double> read_value_lines(std::istream& in, int bits);

// Parses "# resolution=M[ suffix]" where suffix is e.g. "kind=spectrum".
int parse_resolution_header(const std::string& header, const std::string& required_suffix);

}  // namespace wn::detail
