#include "recmech/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>

namespace recmech::csv {

ParseError::ParseError(std::string file_, std::size_t row_, const std::string& what_)
    : std::runtime_error(file_ + ":" + std::to_string(row_) + ": " + what_),
      file(std::move(file_)),
      row(row_) {}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw ParseError(path, 0, "empty file");
  return lines;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string field = line.substr(start, comma - start);
    // trim surrounding blanks
    const auto first = field.find_first_not_of(" \t");
    const auto last = field.find_last_not_of(" \t");
    fields.push_back(first == std::string::npos ? std::string()
                                                : field.substr(first, last - first + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_real(const std::string& token, const std::string& file, std::size_t row) {
  if (token == "inf" || token == "+inf" || token == "Inf") {
    return std::numeric_limits<double>::infinity();
  }
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(file, row, "malformed real '" + token + "'");
  return value;
}

std::size_t parse_size(const std::string& token, const std::string& file, std::size_t row) {
  std::size_t value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(file, row, "malformed integer '" + token + "'");
  return value;
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace recmech::csv
