#include "atree/report.hpp"

#include <algorithm>
#include <cstdio>

namespace atree {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

namespace {

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string render_csv(const Report& report) {
  std::string out;
  auto emit_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += csv_field(row[i]);
    }
    out.push_back('\n');
  };
  emit_row(report.header);
  for (const auto& row : report.rows) emit_row(row);
  return out;
}

std::string render_table(const Report& report) {
  std::vector<std::size_t> widths(report.header.size(), 0);
  auto widen = [&widths](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  };
  widen(report.header);
  for (const auto& row : report.rows) widen(row);

  std::string out;
  auto emit_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += "  ";
      out += row[i];
      if (i + 1 < row.size()) out.append(widths[i] - row[i].size(), ' ');
    }
    out.push_back('\n');
  };
  emit_row(report.header);
  std::vector<std::string> rule;
  for (std::size_t w : widths) rule.emplace_back(w, '-');
  emit_row(rule);
  for (const auto& row : report.rows) emit_row(row);
  for (const auto& note : report.footnotes) {
    out += "note: ";
    out += note;
    out.push_back('\n');
  }
  return out;
}

}  // namespace

std::string render(const Report& report, ReportFormat format) {
  return format == ReportFormat::Csv ? render_csv(report) : render_table(report);
}

}  // namespace atree
