#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace recmech::csv {

// Data/validation error with enough context to name the file and row.
struct ParseError : std::runtime_error {
  std::string file;
  std::size_t row;  // 1-based, header included

  ParseError(std::string file_, std::size_t row_, const std::string& what_);
};

/// Non-empty lines of the file, trailing \r stripped. Throws ParseError (row 0)
/// if the file is missing or empty.
std::vector<std::string> read_lines(const std::string& path);

std::vector<std::string> split_line(const std::string& line);

/// Parses a real; accepts "inf". Throws ParseError on malformed tokens.
double parse_real(const std::string& token, const std::string& file, std::size_t row);

std::size_t parse_size(const std::string& token, const std::string& file, std::size_t row);

/// Shortest decimal representation that round-trips; infinities become "inf".
std::string format_real(double v);

}  // namespace recmech::csv
