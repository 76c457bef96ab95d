#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "atree/tree.hpp"

namespace atree {

// How an ImpactRange collapses to a scalar: Hi takes the upper bound
// (conservative default), Lo the lower, Mid the midpoint.
enum class ImpactPolicy { Hi, Lo, Mid };

std::string_view to_string(ImpactPolicy policy);

struct EvalSettings {
  // Observation window over which "probability of occurrence" is defined.
  double window_min = 1440.0;
  ImpactPolicy impact_policy = ImpactPolicy::Hi;
  // Uniform overrides applied to every leaf before evaluation.
  std::optional<double> override_duration_min;
  std::optional<double> override_frequency_per_day;
};

// p = min(1, frequency * duration / window): the expected fraction of the
// window during which the attack is active, clamped at certainty. With the
// one-day default window, f=5/day at 20 min gives 100/1440 ~= 0.0694.
//
// Throws Errc::NegParam on negative inputs, Errc::BadWindow on window <= 0.
double leaf_probability(double frequency_per_day, double duration_min,
                        double window_min);

double collapse_impact(ImpactRange range, ImpactPolicy policy);

struct NodeScore {
  double probability = 0.0;
  double impact = 0.0;
  double risk = 0.0;  // probability * impact, in [0,5]
};

struct Evaluation {
  std::map<std::string, NodeScore> nodes;  // keyed by path_id
  double root_risk = 0.0;
  // Component tag -> risk of the highest (closest to root) gate carrying it.
  std::map<std::string, double> component_scores;
};

// Leaves get leaf_probability; an OR gate 1 - prod(1 - p_child); an AND gate
// prod(p_child). Leaf events are assumed mutually independent.
std::map<std::string, double> node_probability(const AttackTree& tree,
                                               const EvalSettings& settings);

// Leaf impact collapses per policy; gate impact is the max over children.
std::map<std::string, double> node_impact(const AttackTree& tree,
                                          const EvalSettings& settings);

Evaluation evaluate(const AttackTree& tree, const EvalSettings& settings);

// Drop in root probability when the leaf's probability is forced to zero.
// Throws Errc::UnknownPath / Errc::NotALeaf.
double marginal_contribution(const AttackTree& tree, const EvalSettings& settings,
                             std::string_view leaf_path);

struct RankEntry {
  std::string path_id;
  double probability = 0.0;
  double impact = 0.0;
  double risk = 0.0;
  double marginal = 0.0;
};

// All leaves ordered by leaf risk descending, ties by marginal contribution
// descending, remaining ties by path_id ascending.
std::vector<RankEntry> rank_threats(const AttackTree& tree, const EvalSettings& settings);

}  // namespace atree
