#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gpmap {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Provenance written as `#` lines ahead of every CSV body.
struct CsvMeta {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> extra;
};

/// Six significant digits; NaN prints as an empty field.
std::string format_real(double value);
std::string format_optional(const std::optional<double>& value);

class CsvWriter {
public:
  CsvWriter(std::ostream& out, const CsvMeta& meta, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);

private:
  std::ostream& out_;
  std::size_t columns_;
};

struct CsvTable {
  /// Comment lines without the leading '#' and one following space.
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Throws ValidationError for an unknown column.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
  /// Values of a column; empty fields read as NaN. Throws ValidationError for non-numeric text.
  std::vector<double> numeric(std::string_view name) const;
  /// Value of a `key=value` comment line.
  std::optional<std::string> comment_value(std::string_view key) const;
};

CsvTable read_csv(std::istream& in);
/// Throws ValidationError when the file cannot be opened.
CsvTable read_csv_file(const std::filesystem::path& path);

}  // namespace gpmap
