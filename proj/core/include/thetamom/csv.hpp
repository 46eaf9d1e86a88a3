#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace thetamom {

/// Shortest decimal that round-trips to the same binary64 value.
/// Non-finite values are written as inf, -inf, nan.
[[nodiscard]] std::string format_double(double v);

[[nodiscard]] std::string join(const std::vector<std::string>& fields, char sep = ',');
[[nodiscard]] std::vector<std::string> split(std::string_view line, char sep = ',');

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name, or -1.
  [[nodiscard]] int column(std::string_view name) const;
};

/// Reads a header + rows file (comma separated, no quoting). Throws IoError.
[[nodiscard]] CsvTable read_csv(const std::filesystem::path& path);

/// Writes atomically (temporary file + rename) with LF line endings.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace thetamom
