#include "gpmap/csv.hpp"

#include "gpmap/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace gpmap {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  // Avoid "-0".
  if (std::string_view(buf) == "-0") return "0";
  return buf;
}

std::string format_optional(const std::optional<double>& value) { return value ? format_real(*value) : std::string{}; }

CsvWriter::CsvWriter(std::ostream& out, const CsvMeta& meta, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  out_ << "# gpmap " << kToolVersion << '\n';
  out_ << "# config_hash=" << meta.config_hash << '\n';
  out_ << "# seed=" << meta.seed << '\n';
  for (const auto& [key, value] : meta.extra) out_ << "# " << key << '=' << value << '\n';
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw ValidationError("CSV row has the wrong number of fields");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ValidationError("missing column '" + std::string(name) + "'");
}

bool CsvTable::has_column(std::string_view name) const {
  for (const auto& h : header) {
    if (h == name) return true;
  }
  return false;
}

std::vector<double> CsvTable::numeric(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> values;
  values.reserve(rows.size());
  for (const auto& r : rows) {
    const std::string& text = c < r.size() ? r[c] : std::string{};
    if (text.empty()) {
      values.push_back(std::nan(""));
      continue;
    }
    if (text == "true" || text == "false") {
      values.push_back(text == "true" ? 1.0 : 0.0);
      continue;
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) {
      throw ValidationError("non-numeric value '" + text + "' in column '" + std::string(name) + "'");
    }
    values.push_back(v);
  }
  return values;
}

std::optional<std::string> CsvTable::comment_value(std::string_view key) const {
  for (const auto& c : comments) {
    const auto eq = c.find('=');
    if (eq != std::string::npos && std::string_view(c).substr(0, eq) == key) return c.substr(eq + 1);
  }
  return std::nullopt;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = std::string_view(line).substr(1);
      if (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      table.comments.emplace_back(body);
      continue;
    }
    if (!have_header) {
      table.header = split(line);
      have_header = true;
    } else {
      table.rows.push_back(split(line));
    }
  }
  if (!have_header) throw ValidationError("CSV has no header");
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace gpmap
