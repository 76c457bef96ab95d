#include "atree/tree.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "atree/error.hpp"

namespace atree {

std::string_view to_string(Category category) {
  switch (category) {
    case Category::Security: return "security";
    case Category::Privacy: return "privacy";
    case Category::Safety: return "safety";
  }
  return "security";
}

std::string_view to_string(GateKind kind) {
  return kind == GateKind::And ? "and" : "or";
}

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::EmptyGate: return "EMPTY_GATE";
    case Rule::DuplicateSibling: return "DUPLICATE_SIBLING";
    case Rule::LeafRoot: return "LEAF_ROOT";
    case Rule::BadRange: return "BAD_RANGE";
    case Rule::NegParam: return "NEG_PARAM";
    case Rule::Cycle: return "CYCLE";
    case Rule::Syntax: return "SYNTAX";
  }
  return "SYNTAX";
}

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::Syntax: return "SYNTAX";
    case Errc::Validation: return "VALIDATION";
    case Errc::UnknownPath: return "UNKNOWN_PATH";
    case Errc::NotALeaf: return "NOT_A_LEAF";
    case Errc::EmptyTree: return "EMPTY_TREE";
    case Errc::NegParam: return "NEG_PARAM";
    case Errc::BadWindow: return "BAD_WINDOW";
    case Errc::BadSpec: return "BAD_SPEC";
    case Errc::MalformedCsv: return "MALFORMED_CSV";
    case Errc::UnknownCatalog: return "UNKNOWN_CATALOG";
    case Errc::UnknownEvent: return "UNKNOWN_EVENT";
    case Errc::Io: return "IO";
  }
  return "ERROR";
}

std::string slugify(std::string_view label) {
  std::string out;
  out.reserve(label.size());
  bool pending_hyphen = false;
  for (unsigned char c : label) {
    if (std::isalnum(c)) {
      if (pending_hyphen && !out.empty()) out.push_back('-');
      pending_hyphen = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      pending_hyphen = true;
    }
  }
  return out;
}

namespace {

void assign_paths_rec(Node& node, const std::string& prefix) {
  node.path_id = prefix;
  for (Node& child : node.children) {
    assign_paths_rec(child, prefix + "/" + slugify(child.label));
  }
}

bool is_component_slug(std::string_view tag) {
  if (tag.empty()) return true;  // empty means "no tag"
  if (!std::islower(static_cast<unsigned char>(tag.front()))) return false;
  char prev = 0;
  for (unsigned char c : tag) {
    bool ok = std::islower(c) || std::isdigit(c) || c == '-';
    if (!ok) return false;
    if (c == '-' && prev == '-') return false;
    prev = static_cast<char>(c);
  }
  return tag.back() != '-';
}

void validate_rec(const Node& node, bool is_root, std::vector<Violation>& out) {
  if (node.is_leaf()) {
    if (is_root) {
      out.push_back({node.path_id, Rule::LeafRoot, "the root must be a gate"});
    }
    const LeafEvent& leaf = node.leaf();
    if (leaf.frequency_per_day < 0.0) {
      out.push_back({node.path_id, Rule::NegParam, "frequency is negative"});
    }
    if (leaf.duration_min < 0.0) {
      out.push_back({node.path_id, Rule::NegParam, "duration is negative"});
    }
    if (!(1 <= leaf.impact.lo && leaf.impact.lo <= leaf.impact.hi && leaf.impact.hi <= 5)) {
      out.push_back({node.path_id, Rule::BadRange,
                     "impact range must satisfy 1 <= lo <= hi <= 5"});
    }
    if (!is_component_slug(leaf.component)) {
      out.push_back({node.path_id, Rule::Syntax,
                     "component tag '" + leaf.component + "' is not a lowercase slug"});
    }
    return;
  }

  const Gate& gate = node.gate();
  if (!is_component_slug(gate.component)) {
    out.push_back({node.path_id, Rule::Syntax,
                   "component tag '" + gate.component + "' is not a lowercase slug"});
  }
  if (node.children.empty()) {
    out.push_back({node.path_id, Rule::EmptyGate, "gate has no children"});
  }
  std::map<std::string, int> seen;
  for (const Node& child : node.children) {
    std::string slug = slugify(child.label);
    if (++seen[slug] == 2) {
      out.push_back({node.path_id + "/" + slug, Rule::DuplicateSibling,
                     "sibling label '" + child.label + "' duplicates an earlier sibling"});
    }
    validate_rec(child, false, out);
  }
}

const Node* find_rec(const Node& node, std::string_view path_id) {
  if (node.path_id == path_id) return &node;
  // Paths are prefix-structured, so only matching branches need a visit.
  for (const Node& child : node.children) {
    if (path_id.size() > child.path_id.size() &&
        path_id.substr(0, child.path_id.size()) == child.path_id &&
        path_id[child.path_id.size()] == '/') {
      return find_rec(child, path_id);
    }
    if (child.path_id == path_id) return &child;
  }
  return nullptr;
}

void preorder_rec(const Node& node, std::vector<const Node*>& out) {
  out.push_back(&node);
  for (const Node& child : node.children) preorder_rec(child, out);
}

// Returns false when the node itself vanishes.
bool prune_rec(Node& node, const std::set<std::string>& remove, bool parent_is_and,
               PruneInfo& info) {
  if (remove.count(node.path_id)) {
    if (parent_is_and) info.removed_and_child = true;
    return false;
  }
  if (node.is_leaf()) return true;

  bool here_is_and = node.gate().kind == GateKind::And;
  std::vector<Node> kept;
  kept.reserve(node.children.size());
  for (Node& child : node.children) {
    if (prune_rec(child, remove, here_is_and, info)) {
      kept.push_back(std::move(child));
    }
  }
  node.children = std::move(kept);
  if (node.children.empty()) {
    if (parent_is_and) info.removed_and_child = true;
    return false;
  }
  return true;
}

}  // namespace

void assign_path_ids(AttackTree& tree) {
  tree.root.label = tree.name;
  assign_paths_rec(tree.root, slugify(tree.name));
}

std::vector<Violation> validate_tree(const AttackTree& tree) {
  std::vector<Violation> out;
  validate_rec(tree.root, true, out);
  return out;
}

const Node* find_node(const AttackTree& tree, std::string_view path_id) {
  return find_rec(tree.root, path_id);
}

std::vector<const Node*> preorder(const AttackTree& tree) {
  std::vector<const Node*> out;
  preorder_rec(tree.root, out);
  return out;
}

int node_count(const AttackTree& tree) {
  return static_cast<int>(preorder(tree).size());
}

AttackTree prune(const AttackTree& tree, const std::set<std::string>& remove,
                 PruneInfo* info) {
  for (const std::string& path : remove) {
    if (find_node(tree, path) == nullptr) {
      throw Error(Errc::UnknownPath, "no node with path '" + path + "'");
    }
  }
  if (remove.count(tree.root.path_id)) {
    throw Error(Errc::EmptyTree, "pruning would remove the root");
  }

  AttackTree result = tree;
  PruneInfo local;
  if (!prune_rec(result.root, remove, false, local)) {
    throw Error(Errc::EmptyTree, "pruning would remove every child of the root");
  }
  if (info) *info = local;
  assign_path_ids(result);
  return result;
}

}  // namespace atree
