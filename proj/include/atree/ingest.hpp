#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atree/tree.hpp"

namespace atree {

// One experiment observation, as read from the measurement CSV
// (`scenario,leaf,observed_duration_s,observed_count,window_days`).
// An empty duration field marks a non-crash observation.
struct MeasurementRecord {
  std::string scenario;
  std::string leaf;  // path_id in the target tree
  std::optional<double> observed_duration_s;
  double observed_count = 0.0;
  double window_days = 1.0;
};

struct ParameterOverride {
  std::string leaf;
  // Absent when the originating records carried no duration; applying such an
  // override leaves the leaf's duration untouched.
  std::optional<double> duration_min;
  double frequency_per_day = 0.0;
};

struct IngestResult {
  std::vector<ParameterOverride> overrides;  // one per (scenario, leaf) group
  std::vector<std::string> warnings;         // SKIPPED_DURATION notes
};

// Throws Errc::MalformedCsv on header/shape/number problems.
std::vector<MeasurementRecord> parse_measurements_csv(std::string_view text);

// Groups records by (scenario, leaf) in first-appearance order. Each group
// yields one override: duration = mean of the group's present durations in
// minutes; frequency = the group's occurrence count divided by the leaf's
// total observation window (in days, summed across scenarios). Frequencies of
// one leaf's overrides therefore add up to its overall count/window rate.
IngestResult ingest_measurements(const std::vector<MeasurementRecord>& records);

// Returns a new tree with the listed leaves' parameters replaced, in override
// order. Throws Errc::UnknownPath / Errc::NotALeaf / Errc::NegParam.
AttackTree apply_overrides(const AttackTree& tree,
                           const std::vector<ParameterOverride>& overrides);

}  // namespace atree
