#include "atree/analysis.hpp"

#include <cmath>
#include <random>
#include <set>

#include "atree/error.hpp"

namespace atree {

namespace {

constexpr long long kTrialBlock = 4096;

void check_axis(const std::vector<double>& values, const char* what) {
  if (values.empty()) throw Error(Errc::BadSpec, std::string(what) + " list is empty");
  for (double v : values) {
    if (v < 0.0) throw Error(Errc::NegParam, std::string(what) + " is negative");
  }
}

// splitmix64; decorrelates per-block seeds derived from one user seed.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Flattened tree in postorder: children always precede their parent, so one
// forward pass per trial suffices.
struct FlatTree {
  enum class Op : std::uint8_t { Leaf, And, Or };
  struct Entry {
    Op op;
    std::uint32_t child_begin = 0;  // span into child_index
    std::uint32_t child_end = 0;
    double p = 0.0;  // leaves only
  };
  std::vector<Entry> entries;
  std::vector<std::uint32_t> child_index;
  std::uint32_t root = 0;
};

std::uint32_t flatten_rec(const Node& node, const EvalSettings& settings, FlatTree& flat) {
  if (node.is_leaf()) {
    const LeafEvent& leaf = node.leaf();
    double f = settings.override_frequency_per_day.value_or(leaf.frequency_per_day);
    double d = settings.override_duration_min.value_or(leaf.duration_min);
    FlatTree::Entry entry;
    entry.op = FlatTree::Op::Leaf;
    entry.p = leaf_probability(f, d, settings.window_min);
    flat.entries.push_back(entry);
    return static_cast<std::uint32_t>(flat.entries.size() - 1);
  }
  std::vector<std::uint32_t> children;
  children.reserve(node.children.size());
  for (const Node& child : node.children) {
    children.push_back(flatten_rec(child, settings, flat));
  }
  FlatTree::Entry entry;
  entry.op = node.gate().kind == GateKind::And ? FlatTree::Op::And : FlatTree::Op::Or;
  entry.child_begin = static_cast<std::uint32_t>(flat.child_index.size());
  flat.child_index.insert(flat.child_index.end(), children.begin(), children.end());
  entry.child_end = static_cast<std::uint32_t>(flat.child_index.size());
  flat.entries.push_back(entry);
  return static_cast<std::uint32_t>(flat.entries.size() - 1);
}

FlatTree flatten(const AttackTree& tree, const EvalSettings& settings) {
  FlatTree flat;
  flat.root = flatten_rec(tree.root, settings, flat);
  return flat;
}

// 53-bit uniform in [0,1); fixed semantics across standard libraries, unlike
// std::uniform_real_distribution.
double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

long long run_block(const FlatTree& flat, std::mt19937_64& rng, long long trials,
                    std::vector<char>& state) {
  long long hits = 0;
  for (long long t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < flat.entries.size(); ++i) {
      const FlatTree::Entry& e = flat.entries[i];
      switch (e.op) {
        case FlatTree::Op::Leaf:
          state[i] = uniform53(rng) < e.p;
          break;
        case FlatTree::Op::And: {
          char all = 1;
          for (std::uint32_t c = e.child_begin; c < e.child_end; ++c) {
            all &= state[flat.child_index[c]];
          }
          state[i] = all;
          break;
        }
        case FlatTree::Op::Or: {
          char any = 0;
          for (std::uint32_t c = e.child_begin; c < e.child_end; ++c) {
            any |= state[flat.child_index[c]];
          }
          state[i] = any;
          break;
        }
      }
    }
    hits += state[flat.root];
  }
  return hits;
}

}  // namespace

SweepResult sweep(const AttackTree& tree, const SweepSpec& spec) {
  check_axis(spec.durations_min, "duration");
  check_axis(spec.frequencies_per_day, "frequency");

  SweepResult result;
  result.tree_name = tree.name;
  result.settings = spec.settings;
  for (double d : spec.durations_min) {
    for (double f : spec.frequencies_per_day) {
      EvalSettings settings = spec.settings;
      settings.override_duration_min = d;
      settings.override_frequency_per_day = f;
      result.cells.push_back({d, f, evaluate(tree, settings).root_risk});
    }
  }
  return result;
}

VariantComparison compare_variants(const AttackTree& tree,
                                   const std::vector<VariantSpec>& variants,
                                   const std::vector<std::pair<double, double>>& settings_list,
                                   const EvalSettings& base) {
  if (settings_list.empty()) throw Error(Errc::BadSpec, "settings list is empty");
  if (variants.empty()) throw Error(Errc::BadSpec, "variant list is empty");

  VariantComparison result;
  result.tree_name = tree.name;

  std::vector<AttackTree> pruned;
  pruned.reserve(variants.size());
  for (const VariantSpec& variant : variants) {
    if (variant.prune_paths.empty()) {
      pruned.push_back(tree);
      continue;
    }
    PruneInfo info;
    std::set<std::string> remove(variant.prune_paths.begin(), variant.prune_paths.end());
    pruned.push_back(prune(tree, remove, &info));
    if (info.removed_and_child) result.and_prune_warnings.push_back(variant.label);
  }

  for (const auto& [duration, frequency] : settings_list) {
    EvalSettings settings = base;
    settings.override_duration_min = duration;
    settings.override_frequency_per_day = frequency;
    for (std::size_t i = 0; i < variants.size(); ++i) {
      result.cells.push_back(
          {duration, frequency, variants[i].label, evaluate(pruned[i], settings).root_risk});
    }
  }
  return result;
}

SimEstimate monte_carlo_probability(const AttackTree& tree, const EvalSettings& settings,
                                    long long trials, std::uint64_t seed) {
  if (trials < 1) throw Error(Errc::BadSpec, "trials must be >= 1");

  FlatTree flat = flatten(tree, settings);
  std::vector<char> state(flat.entries.size(), 0);

  long long hits = 0;
  long long done = 0;
  for (std::uint64_t block = 0; done < trials; ++block) {
    long long n = std::min(kTrialBlock, trials - done);
    std::mt19937_64 rng(mix64(seed ^ mix64(block)));
    hits += run_block(flat, rng, n, state);
    done += n;
  }

  SimEstimate estimate;
  estimate.trials = trials;
  estimate.seed = seed;
  estimate.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  estimate.stderr_value =
      std::sqrt(estimate.estimate * (1.0 - estimate.estimate) / static_cast<double>(trials));
  estimate.generator = "mt19937_64/u53 blocks of " + std::to_string(kTrialBlock);
  return estimate;
}

OracleReport oracle_check(const AttackTree& tree, const EvalSettings& settings,
                          long long trials, std::uint64_t seed, double z) {
  if (trials < 1000) throw Error(Errc::BadSpec, "oracle check needs trials >= 1000");
  if (!(z > 0.0)) throw Error(Errc::BadSpec, "z must be positive");

  OracleReport report;
  report.z = z;
  report.analytic = node_probability(tree, settings).at(tree.root.path_id);
  report.sim = monte_carlo_probability(tree, settings, trials, seed);
  report.delta = std::abs(report.analytic - report.sim.estimate);
  report.pass = report.delta <= z * report.sim.stderr_value;
  return report;
}

}  // namespace atree
