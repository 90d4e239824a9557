#pragma once

// Plain-text report helpers: fixed-precision numbers, CSV tables and the
// 64-bit FNV-1a hash used to tag every report with its configuration.

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "radonlab/errors.hpp"

namespace radonlab {

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// 12 significant digits in scientific notation; "-0" is printed as "0".
inline std::string fmt(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::vector<std::string> header) : os_(os), width_(header.size()) {
    require(!header.empty(), "CsvWriter: empty header");
    write_row(header);
  }

  void row(const std::vector<std::string>& cells) {
    require(cells.size() == width_, "CsvWriter: row width differs from the header");
    write_row(cells);
  }

  // '#'-prefixed key/value lines after the table.
  void comment(const std::string& key, const std::string& value) { os_ << "# " << key << "=" << value << '\n'; }

 private:
  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      const bool quote = cells[i].find_first_of(",\"\n") != std::string::npos;
      if (!quote) {
        os_ << cells[i];
        continue;
      }
      os_ << '"';
      for (char c : cells[i]) {
        if (c == '"') os_ << '"';
        os_ << c;
      }
      os_ << '"';
    }
    os_ << '\n';
  }

  std::ostream& os_;
  std::size_t width_;
};

}  // namespace radonlab
