#include "atree/risk.hpp"

#include <algorithm>
#include <limits>

#include "atree/error.hpp"

namespace atree {

std::string_view to_string(ImpactPolicy policy) {
  switch (policy) {
    case ImpactPolicy::Hi: return "hi";
    case ImpactPolicy::Lo: return "lo";
    case ImpactPolicy::Mid: return "mid";
  }
  return "hi";
}

double leaf_probability(double frequency_per_day, double duration_min,
                        double window_min) {
  if (frequency_per_day < 0.0) throw Error(Errc::NegParam, "frequency is negative");
  if (duration_min < 0.0) throw Error(Errc::NegParam, "duration is negative");
  if (!(window_min > 0.0)) throw Error(Errc::BadWindow, "window must be positive");
  return std::min(1.0, frequency_per_day * duration_min / window_min);
}

double collapse_impact(ImpactRange range, ImpactPolicy policy) {
  switch (policy) {
    case ImpactPolicy::Hi: return static_cast<double>(range.hi);
    case ImpactPolicy::Lo: return static_cast<double>(range.lo);
    case ImpactPolicy::Mid: return (range.lo + range.hi) / 2.0;
  }
  return static_cast<double>(range.hi);
}

namespace {

double effective_leaf_probability(const LeafEvent& leaf, const EvalSettings& settings) {
  double f = settings.override_frequency_per_day.value_or(leaf.frequency_per_day);
  double d = settings.override_duration_min.value_or(leaf.duration_min);
  return leaf_probability(f, d, settings.window_min);
}

double probability_rec(const Node& node, const EvalSettings& settings,
                       std::string_view zero_leaf,
                       std::map<std::string, double>* out) {
  double p = 0.0;
  if (node.is_leaf()) {
    p = node.path_id == zero_leaf ? 0.0 : effective_leaf_probability(node.leaf(), settings);
  } else if (node.gate().kind == GateKind::Or) {
    double none = 1.0;
    for (const Node& child : node.children) {
      none *= 1.0 - probability_rec(child, settings, zero_leaf, out);
    }
    p = 1.0 - none;
  } else {
    double all = 1.0;
    for (const Node& child : node.children) {
      all *= probability_rec(child, settings, zero_leaf, out);
    }
    p = all;
  }
  if (out) (*out)[node.path_id] = p;
  return p;
}

double impact_rec(const Node& node, ImpactPolicy policy,
                  std::map<std::string, double>* out) {
  double impact;
  if (node.is_leaf()) {
    impact = collapse_impact(node.leaf().impact, policy);
  } else {
    impact = -std::numeric_limits<double>::infinity();
    for (const Node& child : node.children) {
      impact = std::max(impact, impact_rec(child, policy, out));
    }
  }
  if (out) (*out)[node.path_id] = impact;
  return impact;
}

const Node* require_leaf(const AttackTree& tree, std::string_view leaf_path) {
  const Node* node = find_node(tree, leaf_path);
  if (!node) throw Error(Errc::UnknownPath, "no node with path '" + std::string(leaf_path) + "'");
  if (!node->is_leaf()) {
    throw Error(Errc::NotALeaf, "'" + std::string(leaf_path) + "' names a gate");
  }
  return node;
}

}  // namespace

std::map<std::string, double> node_probability(const AttackTree& tree,
                                               const EvalSettings& settings) {
  std::map<std::string, double> out;
  probability_rec(tree.root, settings, "", &out);
  return out;
}

std::map<std::string, double> node_impact(const AttackTree& tree,
                                          const EvalSettings& settings) {
  std::map<std::string, double> out;
  impact_rec(tree.root, settings.impact_policy, &out);
  return out;
}

Evaluation evaluate(const AttackTree& tree, const EvalSettings& settings) {
  Evaluation eval;
  std::map<std::string, double> probability;
  std::map<std::string, double> impact;
  probability_rec(tree.root, settings, "", &probability);
  impact_rec(tree.root, settings.impact_policy, &impact);

  for (const auto& [path, p] : probability) {
    NodeScore score;
    score.probability = p;
    score.impact = impact.at(path);
    score.risk = score.probability * score.impact;
    eval.nodes.emplace(path, score);
  }
  eval.root_risk = eval.nodes.at(tree.root.path_id).risk;

  // The highest gate wins per tag: smallest depth, preorder-first on ties
  // (preorder preserves document order within a depth level).
  struct Best {
    int depth;
    double risk;
  };
  std::map<std::string, Best> best;
  auto visit = [&](auto&& self, const Node& node, int depth) -> void {
    if (node.is_gate() && !node.gate().component.empty()) {
      const std::string& tag = node.gate().component;
      auto it = best.find(tag);
      if (it == best.end() || depth < it->second.depth) {
        best[tag] = Best{depth, eval.nodes.at(node.path_id).risk};
      }
    }
    for (const Node& child : node.children) self(self, child, depth + 1);
  };
  visit(visit, tree.root, 0);
  for (const auto& [tag, entry] : best) eval.component_scores[tag] = entry.risk;
  return eval;
}

double marginal_contribution(const AttackTree& tree, const EvalSettings& settings,
                             std::string_view leaf_path) {
  require_leaf(tree, leaf_path);
  double base = probability_rec(tree.root, settings, "", nullptr);
  double without = probability_rec(tree.root, settings, leaf_path, nullptr);
  return base - without;
}

std::vector<RankEntry> rank_threats(const AttackTree& tree, const EvalSettings& settings) {
  std::vector<RankEntry> entries;
  double base = probability_rec(tree.root, settings, "", nullptr);
  for (const Node* node : preorder(tree)) {
    if (!node->is_leaf()) continue;
    RankEntry entry;
    entry.path_id = node->path_id;
    entry.probability = effective_leaf_probability(node->leaf(), settings);
    entry.impact = collapse_impact(node->leaf().impact, settings.impact_policy);
    entry.risk = entry.probability * entry.impact;
    entry.marginal = base - probability_rec(tree.root, settings, node->path_id, nullptr);
    entries.push_back(std::move(entry));
  }
  std::sort(entries.begin(), entries.end(), [](const RankEntry& a, const RankEntry& b) {
    if (a.risk != b.risk) return a.risk > b.risk;
    if (a.marginal != b.marginal) return a.marginal > b.marginal;
    return a.path_id < b.path_id;
  });
  return entries;
}

}  // namespace atree
