#pragma once

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace atree {

inline constexpr std::string_view kFormatVersion = "1";

enum class Category { Security, Privacy, Safety };
enum class GateKind { And, Or };

std::string_view to_string(Category category);
std::string_view to_string(GateKind kind);

// Impact severity on the 1 (easily repaired) .. 5 (severe) scale. Single
// values are stored as degenerate ranges, e.g. 4 == [4,4].
struct ImpactRange {
  int lo = 1;
  int hi = 1;

  friend bool operator==(const ImpactRange&, const ImpactRange&) = default;
};

// An elementary attacker activity. `frequency_per_day` is the attack rate,
// `duration_min` the timespan of one occurrence.
struct LeafEvent {
  double frequency_per_day = 0.0;
  double duration_min = 0.0;
  ImpactRange impact{};
  Category category = Category::Security;
  std::string component;  // optional lowercase slug, empty when untagged

  friend bool operator==(const LeafEvent&, const LeafEvent&) = default;
};

struct Gate {
  GateKind kind = GateKind::Or;
  std::string component;  // optional lowercase slug, empty when untagged

  friend bool operator==(const Gate&, const Gate&) = default;
};

// One tree node. Children are held by value, so a node graph is a tree by
// construction (no cycles, single parent). Only gates carry children.
struct Node {
  std::string label;
  std::string path_id;  // slash-joined slugs from the root; see assign_path_ids
  std::variant<Gate, LeafEvent> value = Gate{};
  std::vector<Node> children;

  bool is_gate() const { return std::holds_alternative<Gate>(value); }
  bool is_leaf() const { return std::holds_alternative<LeafEvent>(value); }
  Gate& gate() { return std::get<Gate>(value); }
  const Gate& gate() const { return std::get<Gate>(value); }
  LeafEvent& leaf() { return std::get<LeafEvent>(value); }
  const LeafEvent& leaf() const { return std::get<LeafEvent>(value); }

  friend bool operator==(const Node&, const Node&) = default;
};

// Immutable after construction; safe to share across threads.
struct AttackTree {
  std::string name;  // display string; doubles as the root node's label
  std::string version = std::string(kFormatVersion);
  Node root;

  friend bool operator==(const AttackTree&, const AttackTree&) = default;
};

enum class Rule {
  EmptyGate,
  DuplicateSibling,
  LeafRoot,
  BadRange,
  NegParam,
  Cycle,
  Syntax,
};

std::string_view to_string(Rule rule);

struct Violation {
  std::string path_id;  // empty for document-level problems
  Rule rule = Rule::Syntax;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Lowercases the label and collapses every run of non-alphanumerics into a
// single hyphen; leading/trailing hyphens are trimmed. "Get Password/
// Unauthorized Login" -> "get-password-unauthorized-login".
std::string slugify(std::string_view label);

// Recomputes every path_id from labels and positions. The root's path is the
// slug of the tree name; children append "/" + slug(label).
void assign_path_ids(AttackTree& tree);

// Returns all invariant violations; empty means the tree is valid.
// Violations are data, not failures.
std::vector<Violation> validate_tree(const AttackTree& tree);

// Preorder walk helpers.
const Node* find_node(const AttackTree& tree, std::string_view path_id);
std::vector<const Node*> preorder(const AttackTree& tree);
int node_count(const AttackTree& tree);

struct PruneInfo {
  // Set when a removed subtree (listed or cascade-removed) was the direct
  // child of an AND gate; OR-pruning monotonicity no longer applies.
  bool removed_and_child = false;
};

// Returns a new tree with the listed subtrees removed. Gates emptied by the
// removal disappear recursively. Throws Errc::UnknownPath for paths missing
// from the tree and Errc::EmptyTree if nothing of the root would survive.
AttackTree prune(const AttackTree& tree, const std::set<std::string>& remove,
                 PruneInfo* info = nullptr);

}  // namespace atree
