#include "atree/ingest.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "atree/error.hpp"

namespace atree {

namespace {

constexpr std::string_view kHeader = "scenario,leaf,observed_duration_s,observed_count,window_days";

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_field_number(const std::string& field, int line_no, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(value)) {
    throw Error(Errc::MalformedCsv, "line " + std::to_string(line_no) + ": malformed " +
                                        what + " '" + field + "'");
  }
  return value;
}

}  // namespace

std::vector<MeasurementRecord> parse_measurements_csv(std::string_view text) {
  std::vector<MeasurementRecord> records;
  int line_no = 0;
  bool saw_header = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (!saw_header) {
      if (line != kHeader) {
        throw Error(Errc::MalformedCsv,
                    "expected header '" + std::string(kHeader) + "', got '" +
                        std::string(line) + "'");
      }
      saw_header = true;
      continue;
    }

    std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 5) {
      throw Error(Errc::MalformedCsv, "line " + std::to_string(line_no) + ": expected 5 fields, got " +
                                          std::to_string(fields.size()));
    }
    MeasurementRecord record;
    record.scenario = fields[0];
    record.leaf = fields[1];
    if (record.leaf.empty()) {
      throw Error(Errc::MalformedCsv, "line " + std::to_string(line_no) + ": empty leaf path");
    }
    if (!fields[2].empty()) {
      double seconds = parse_field_number(fields[2], line_no, "observed_duration_s");
      if (seconds < 0.0) {
        throw Error(Errc::MalformedCsv,
                    "line " + std::to_string(line_no) + ": negative duration");
      }
      record.observed_duration_s = seconds;
    }
    record.observed_count = parse_field_number(fields[3], line_no, "observed_count");
    if (record.observed_count < 0.0) {
      throw Error(Errc::MalformedCsv, "line " + std::to_string(line_no) + ": negative count");
    }
    record.window_days = parse_field_number(fields[4], line_no, "window_days");
    if (!(record.window_days > 0.0)) {
      throw Error(Errc::MalformedCsv,
                  "line " + std::to_string(line_no) + ": window_days must be positive");
    }
    records.push_back(std::move(record));
  }
  if (!saw_header) throw Error(Errc::MalformedCsv, "empty document, header required");
  return records;
}

IngestResult ingest_measurements(const std::vector<MeasurementRecord>& records) {
  struct Group {
    std::string scenario;
    std::string leaf;
    double duration_sum_s = 0.0;
    int duration_count = 0;
    double count_sum = 0.0;
  };
  std::vector<Group> groups;
  std::map<std::pair<std::string, std::string>, std::size_t> group_index;
  std::map<std::string, double> leaf_window_days;

  IngestResult result;
  for (const MeasurementRecord& record : records) {
    leaf_window_days[record.leaf] += record.window_days;
    auto key = std::make_pair(record.scenario, record.leaf);
    auto [it, inserted] = group_index.emplace(key, groups.size());
    if (inserted) groups.push_back({record.scenario, record.leaf, 0.0, 0, 0.0});
    Group& group = groups[it->second];
    group.count_sum += record.observed_count;
    if (record.observed_duration_s) {
      group.duration_sum_s += *record.observed_duration_s;
      group.duration_count += 1;
    } else {
      result.warnings.push_back("SKIPPED_DURATION: scenario '" + record.scenario +
                                "' leaf '" + record.leaf +
                                "' has no duration; counted toward frequency only");
    }
  }

  for (const Group& group : groups) {
    ParameterOverride override_;
    override_.leaf = group.leaf;
    if (group.duration_count > 0) {
      override_.duration_min = group.duration_sum_s / group.duration_count / 60.0;
    }
    override_.frequency_per_day = group.count_sum / leaf_window_days.at(group.leaf);
    result.overrides.push_back(std::move(override_));
  }
  return result;
}

AttackTree apply_overrides(const AttackTree& tree,
                           const std::vector<ParameterOverride>& overrides) {
  AttackTree result = tree;
  for (const ParameterOverride& override_ : overrides) {
    if (override_.frequency_per_day < 0.0 ||
        (override_.duration_min && *override_.duration_min < 0.0)) {
      throw Error(Errc::NegParam, "override for '" + override_.leaf + "' is negative");
    }
    // find_node returns a pointer into `result`; the cast is safe because we
    // own the copy.
    const Node* found = find_node(result, override_.leaf);
    if (!found) throw Error(Errc::UnknownPath, "no node with path '" + override_.leaf + "'");
    if (!found->is_leaf()) {
      throw Error(Errc::NotALeaf, "'" + override_.leaf + "' names a gate");
    }
    Node* node = const_cast<Node*>(found);
    node->leaf().frequency_per_day = override_.frequency_per_day;
    if (override_.duration_min) node->leaf().duration_min = *override_.duration_min;
  }
  return result;
}

}  // namespace atree
