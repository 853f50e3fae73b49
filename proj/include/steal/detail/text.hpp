#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "steal/errors.hpp"

namespace steal::detail {

inline std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

// Splits into whitespace-separated tokens.
inline std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

// Significant lines of an input file: comments (from '#') and blank lines
// are dropped, everything else is trimmed.
inline std::vector<std::string> significant_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

inline long long parse_int(const std::string& t, const std::string& what) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected integer for " + what + ", got '" + t + "'");
  }
  if (pos != t.size())
    throw ParseError("expected integer for " + what + ", got '" + t + "'");
  return v;
}

}  // namespace steal::detail
