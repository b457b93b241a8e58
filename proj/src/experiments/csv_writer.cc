#include "p2pcc/experiments/csv_writer.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace p2pcc {

namespace {

std::string FormatValue(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void WriteCsv(const MetricsLog& log, std::ostream& out) {
  const std::vector<std::string> names = log.ColumnNames();
  for (std::size_t i = 0; i < names.size(); ++i)
    out << (i ? "," : "") << names[i];
  out << '\n';
  for (const auto& row : log.rows) {
    const std::vector<double> values = log.RowValues(row);
    for (std::size_t i = 0; i < values.size(); ++i)
      out << (i ? "," : "") << FormatValue(values[i]);
    out << '\n';
  }
}

void EmitCsv(const MetricsLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  WriteCsv(log, out);
  out.flush();
  if (!out)
    throw std::runtime_error("write failed for " + path.string());
}

}  // namespace p2pcc
