#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "atree/risk.hpp"
#include "atree/tree.hpp"

namespace atree {

struct SweepSpec {
  std::vector<double> durations_min;
  std::vector<double> frequencies_per_day;
  EvalSettings settings;  // window and impact policy; overrides come per cell
};

struct SweepCell {
  double duration_min = 0.0;
  double frequency_per_day = 0.0;
  double root_risk = 0.0;
};

struct SweepResult {
  std::string tree_name;
  EvalSettings settings;
  std::vector<SweepCell> cells;  // duration-major, in spec order
};

// Evaluates the tree once per (duration, frequency) pair with uniform leaf
// overrides and records the root risk. Throws Errc::BadSpec on empty axes,
// Errc::NegParam on negative values.
SweepResult sweep(const AttackTree& tree, const SweepSpec& spec);

struct VariantSpec {
  std::string label;
  std::vector<std::string> prune_paths;  // empty = the complete tree
};

struct VariantCell {
  double duration_min = 0.0;
  double frequency_per_day = 0.0;
  std::string variant;
  double root_risk = 0.0;
};

struct VariantComparison {
  std::string tree_name;
  std::vector<VariantCell> cells;  // settings-major, variants in given order
  // Variants that pruned a child of an AND gate; root risk is then no longer
  // guaranteed to stay below the complete tree's.
  std::vector<std::string> and_prune_warnings;
};

VariantComparison compare_variants(const AttackTree& tree,
                                   const std::vector<VariantSpec>& variants,
                                   const std::vector<std::pair<double, double>>& settings_list,
                                   const EvalSettings& base = {});

struct SimEstimate {
  double estimate = 0.0;
  long long trials = 0;
  double stderr_value = 0.0;  // sqrt(p(1-p)/trials), normal approximation
  std::uint64_t seed = 0;
  std::string generator;  // recorded so a report can reproduce the run
};

// Draws every leaf as an independent coin with its analytic probability and
// evaluates the boolean tree (OR = any child, AND = all children). Trials are
// processed in fixed-size blocks, each with an independently derived RNG
// stream, so the estimate depends only on (seed, trials) and not on how the
// blocks are scheduled. Throws Errc::BadSpec on trials < 1.
SimEstimate monte_carlo_probability(const AttackTree& tree, const EvalSettings& settings,
                                    long long trials, std::uint64_t seed);

struct OracleReport {
  double analytic = 0.0;
  SimEstimate sim;
  double z = 3.0;
  double delta = 0.0;  // |analytic - estimate|
  bool pass = false;
};

// Passes iff |analytic - estimate| <= z * stderr. Requires trials >= 1000.
OracleReport oracle_check(const AttackTree& tree, const EvalSettings& settings,
                          long long trials, std::uint64_t seed, double z = 3.0);

}  // namespace atree
