#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace seqdisc::io {

/// Shortest decimal form with 15 significant digits.
std::string format_double(double value);

/// Writes a CSV file with a header row, 15-significant-digit values and LF
/// line endings. Throws IoError when the file cannot be written.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Writes plain text; throws IoError when the file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace seqdisc::io
