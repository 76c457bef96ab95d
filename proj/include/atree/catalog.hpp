#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "atree/tree.hpp"

namespace atree {

// Bundled attack trees from the vSocial VRLE case study: a small DoS sample
// plus the full security/privacy/safety trees with their published impact
// scales. Leaf frequencies and durations default to zero and are meant to be
// set through measurement overrides or uniform sweep settings.
struct CatalogEntry {
  std::string name;  // "sample-dos" | "security" | "privacy" | "safety"
  AttackTree tree;
  // Leaf path -> note on whether the component placement is stated by the
  // case-study description or assigned by this catalog.
  std::map<std::string, std::string> provenance;
};

const std::vector<std::string>& catalog_names();

// Canonical DSL document for a bundled tree. Throws Errc::UnknownCatalog.
std::string_view builtin_tree_text(std::string_view name);

// Deep copy of a bundled tree. Throws Errc::UnknownCatalog.
AttackTree builtin_tree(std::string_view name);

CatalogEntry catalog_entry(std::string_view name);

// Impact range for an attack event, exactly as tabulated in the case study.
// Throws Errc::UnknownEvent for pairs missing from the tables.
ImpactRange impact_lookup(std::string_view event, Category category);

}  // namespace atree
