#pragma once

#include <string>
#include <vector>

namespace atree {

enum class ReportFormat { Table, Csv };

// A rectangular report plus footnote lines (warnings, summary values). The
// renderer is deterministic: same report, same bytes.
struct Report {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footnotes;
};

// Numbers render with 6 significant digits everywhere a report shows them.
std::string format_number(double value);

// Table: padded columns, footnotes after the rows. CSV: header-first RFC-ish
// output (fields quoted only when they contain a comma, quote or newline);
// footnotes are NOT part of CSV output and must go to a diagnostic stream.
std::string render(const Report& report, ReportFormat format);

}  // namespace atree
