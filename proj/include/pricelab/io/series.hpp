#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "pricelab/io/scenario.hpp"

namespace pricelab::io {

using Cell = std::variant<std::int64_t, double, std::string>;

/// A named, column-typed series ready for CSV or JSON output.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// 12 significant digits; "nan" and "inf"/"-inf" for non-finite values.
std::string format_number(double x);

std::string render_csv(const Table& table);
/// {"<name>": [{column: value, ...}, ...]}; non-finite numbers become null.
std::string render_json(const Table& table);

/// Writes the table to `path`, creating parent directories. Throws IoError
/// naming the path when it cannot be written.
void emit_series(const Table& table, OutputFormat format, const std::filesystem::path& path);

}  // namespace pricelab::io
