#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cavshift {

/// Column-oriented table with a provenance manifest.  Cells are doubles or
/// null (undefined, e.g. M at the midpoint or a failed sweep point).
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  nlohmann::ordered_json manifest;

  void add_row(std::vector<std::optional<double>> row);
};

/// %.{precision}g rendering used for CSV cells; re-parsing and re-emitting
/// at the same precision is byte-stable.
std::string format_double(double v, int precision);

/// Header row, comma separators, '.' decimal point, 'null' for undefined
/// cells.  Written atomically (temp file + rename).  The manifest goes to
/// "<path>.manifest.json" alongside.
void write_csv(const Dataset& ds, const std::filesystem::path& path, int precision = 12);

/// One object {"manifest": ..., "columns": [...], "rows": [[...]]} with
/// nulls for undefined cells.  Atomic like write_csv.
void write_json(const Dataset& ds, const std::filesystem::path& path, int precision = 12);

/// Parses a CSV produced by write_csv (header + numeric/null cells).
Dataset read_csv(const std::filesystem::path& path);

}  // namespace cavshift
