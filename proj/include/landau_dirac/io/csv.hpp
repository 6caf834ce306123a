#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "landau_dirac/errors.hpp"

namespace landau_dirac::io {

// Round-trippable decimal with 17 significant digits.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// RFC 4180 field quoting: fields containing a comma, quote, CR or LF are
// wrapped in quotes with inner quotes doubled.
inline std::string quote_field(std::string_view f) {
  if (f.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(f);
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(std::string_view text) { os_ << "# " << text << "\r\n"; }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os_ << ',';
      os_ << quote_field(fields[i]);
    }
    os_ << "\r\n";
  }

 private:
  std::ostream& os_;
};

// Binary output so that line endings are byte-identical across platforms.
inline std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw error(error_kind::io, "cannot open '" + path + "' for writing");
  return os;
}

}  // namespace landau_dirac::io
