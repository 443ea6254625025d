#pragma once

#include <string>
#include <string_view>

#include "eok/instance.hpp"

namespace eok {

// Text format:
//   c <comment>                      (anywhere)
//   p eok <n> <m> <k> <epsilon>
//   <k signed 1-based literals> 0    (m lines)
// Generator provenance is kept in a "c origin ..." comment so a round trip
// reproduces the Formula exactly.
Formula parse_formula(std::string_view text);
std::string write_formula(const Formula& f);

Formula read_formula_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

// Shortest representation that parses back to the same double.
std::string format_double(double x);

}  // namespace eok
