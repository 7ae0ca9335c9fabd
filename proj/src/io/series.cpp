#include "pricelab/io/series.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "pricelab/errors.hpp"

namespace pricelab::io {

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  return std::get<std::string>(cell);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  if (const auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return nullptr;
    // round through the 12-digit text so both formats carry the same value
    return std::stod(format_number(*d));
  }
  return std::get<std::string>(cell);
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(table.columns[i]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(cell_text(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      obj[table.columns[i]] = cell_json(row[i]);
    }
    rows.push_back(std::move(obj));
  }
  nlohmann::ordered_json doc;
  doc[table.name] = std::move(rows);
  return doc.dump(2) + "\n";
}

void emit_series(const Table& table, OutputFormat format, const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write output file " + path.string());
  out << (format == OutputFormat::json ? render_json(table) : render_csv(table));
  if (!out) throw IoError("failed writing output file " + path.string());
}

}  // namespace pricelab::io
