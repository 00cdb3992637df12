#include "seqdisc/io.hpp"

#include <cstdio>
#include <fstream>

#include "seqdisc/errors.hpp"

namespace seqdisc::io {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.15g", value);
  return buffer;
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  for (size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  if (!out.good()) {
    throw IoError("write to " + path.string() + " failed");
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << text;
  if (!out.good()) {
    throw IoError("write to " + path.string() + " failed");
  }
}

}  // namespace seqdisc::io
