#include "cavshift/dataset.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cavshift/errors.hpp"

namespace cavshift {

namespace fs = std::filesystem;

void Dataset::add_row(std::vector<std::optional<double>> row) {
  if (row.size() != columns.size())
    throw InvalidArgument("row width does not match column count");
  rows.push_back(std::move(row));
}

std::string format_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

namespace {

void atomic_write(const fs::path& path, const std::string& contents) {
  fs::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  fs::create_directories(dir);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_manifest(const Dataset& ds, const fs::path& csv_path) {
  if (ds.manifest.is_null()) return;
  atomic_write(fs::path(csv_path.string() + ".manifest.json"), ds.manifest.dump(2) + "\n");
}

}  // namespace

void write_csv(const Dataset& ds, const fs::path& path, int precision) {
  std::ostringstream out;
  for (size_t c = 0; c < ds.columns.size(); ++c)
    out << (c ? "," : "") << ds.columns[c];
  out << "\n";
  for (const auto& row : ds.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      out << (row[c] ? format_double(*row[c], precision) : std::string("null"));
    }
    out << "\n";
  }
  atomic_write(path, out.str());
  write_manifest(ds, path);
}

void write_json(const Dataset& ds, const fs::path& path, int precision) {
  nlohmann::ordered_json doc;
  doc["manifest"] = ds.manifest.is_null() ? nlohmann::ordered_json::object()
                                          : ds.manifest;
  doc["columns"] = ds.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : ds.rows) {
    auto jrow = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (cell)
        // Round through the configured precision so CSV and JSON agree.
        jrow.push_back(std::stod(format_double(*cell, precision)));
      else
        jrow.push_back(nullptr);
    }
    rows.push_back(std::move(jrow));
  }
  doc["rows"] = std::move(rows);
  atomic_write(path, doc.dump(2) + "\n");
}

Dataset read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Dataset ds;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path.string());
  std::istringstream header(line);
  std::string tok;
  while (std::getline(header, tok, ',')) ds.columns.push_back(tok);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::vector<std::optional<double>> row;
    while (std::getline(ss, tok, ',')) {
      if (tok == "null")
        row.emplace_back(std::nullopt);
      else
        row.emplace_back(std::stod(tok));
    }
    if (row.size() != ds.columns.size())
      throw std::runtime_error("ragged CSV row in " + path.string());
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

}  // namespace cavshift
