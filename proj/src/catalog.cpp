#include "atree/catalog.hpp"

#include "atree/dsl.hpp"
#include "atree/error.hpp"

namespace atree {

namespace {

// Canonical documents; the catalog self-check test asserts that serializing
// the parsed trees reproduces these byte for byte.

constexpr std::string_view kSampleDos = R"(tree "Security Compromise" or {
  or "Network" component=network {
    leaf "DoS" freq=0/day dur=0min impact=5 category=security
    leaf "Delayed Packets" freq=0/day dur=0min impact=2 category=security
  }
  or "Rendering" component=rendering {
    leaf "DoS" freq=0/day dur=0min impact=5 category=security
    leaf "Packet Loss" freq=0/day dur=0min impact=4 category=security
  }
}
)";

constexpr std::string_view kSecurity = R"(tree "Security Threats" or {
  or "VR Space" component=vr-space {
    leaf "Spoofing" freq=0/day dur=0min impact=2 category=security
    leaf "Instructor Spoofing" freq=0/day dur=0min impact=2-3 category=security
    leaf "Admin Spoofing" freq=0/day dur=0min impact=4-5 category=security
  }
  or "Storage" component=storage {
    leaf "SQL injection" freq=0/day dur=0min impact=3 category=security
    leaf "Get Password/Unauthorized Login" freq=0/day dur=0min impact=2-3 category=security
  }
  or "Network" component=network {
    leaf "DoS" freq=0/day dur=0min impact=5 category=security
    leaf "DDoS" freq=0/day dur=0min impact=5 category=security
    leaf "Delay Packets" freq=0/day dur=0min impact=2 category=security
  }
  or "Rendering Controls" component=rendering-controls {
    leaf "Packet Loss" freq=0/day dur=0min impact=4 category=security
  }
  or "Visualization" component=visualization {
    leaf "XSS attack" freq=0/day dur=0min impact=4 category=security
  }
}
)";

constexpr std::string_view kPrivacy = R"(tree "Privacy Threats" or {
  or "Storage" component=storage {
    leaf "SQL Injection" freq=0/day dur=0min impact=3 category=privacy
    leaf "Undeleted Account" freq=0/day dur=0min impact=1 category=privacy
    leaf "User not notified" freq=0/day dur=0min impact=4 category=privacy
  }
  or "VR Space" component=vr-space {
    leaf "Screen Observation" freq=0/day dur=0min impact=1-2 category=privacy
    leaf "Hand Movement Observation" freq=0/day dur=0min impact=1-2 category=privacy
  }
  or "Network" component=network {
    leaf "Packet Sniffing" freq=0/day dur=0min impact=5 category=privacy
    leaf "Change Packet Destination" freq=0/day dur=0min impact=4 category=privacy
  }
}
)";

// The case-study component inventory for safety also names a VR-space module,
// but none of the tabulated safety events belongs to it, so the bundled tree
// carries no vr-space gate.
constexpr std::string_view kSafety = R"(tree "Safety Threats" or {
  or "Network" component=network {
    leaf "Redirect Packets to Malicious Server" freq=0/day dur=0min impact=4 category=safety
    leaf "Jitter" freq=0/day dur=0min impact=3 category=safety
    leaf "Low Bandwidth" freq=0/day dur=0min impact=4 category=safety
  }
  or "VR Rendering" component=vr-rendering {
    leaf "Poorly Written Code" freq=0/day dur=0min impact=1 category=safety
  }
  or "Location Information" component=location-information {
    leaf "Location Inference attack" freq=0/day dur=0min impact=2 category=safety
  }
  or "Extended Sessions" component=extended-sessions {
    leaf "Long VR sessions" freq=0/day dur=0min impact=3 category=safety
  }
}
)";

struct ImpactRow {
  std::string_view event;
  Category category;
  ImpactRange range;
};

// Tables carried over verbatim from the case study; "Delayed Packets" is an
// alias for "Delay Packets" used by the sample DoS tree.
constexpr ImpactRow kImpactTable[] = {
    // Safety.
    {"Redirect Packets to Malicious Server", Category::Safety, {4, 4}},
    {"Poorly Written Code", Category::Safety, {1, 1}},
    {"Location Inference attack", Category::Safety, {2, 2}},
    {"Jitter", Category::Safety, {3, 3}},
    {"Low Bandwidth", Category::Safety, {4, 4}},
    {"Long VR sessions", Category::Safety, {3, 3}},
    // Security.
    {"XSS attack", Category::Security, {4, 4}},
    {"Delay Packets", Category::Security, {2, 2}},
    {"Delayed Packets", Category::Security, {2, 2}},
    {"DoS", Category::Security, {5, 5}},
    {"DDoS", Category::Security, {5, 5}},
    {"Packet Loss", Category::Security, {4, 4}},
    {"Instructor Spoofing", Category::Security, {2, 3}},
    {"Admin Spoofing", Category::Security, {4, 5}},
    {"Get Password/Unauthorized Login", Category::Security, {2, 3}},
    {"SQL injection", Category::Security, {3, 3}},
    {"Spoofing", Category::Security, {2, 2}},
    // Privacy.
    {"SQL Injection", Category::Privacy, {3, 3}},
    {"Undeleted Account", Category::Privacy, {1, 1}},
    {"Change Packet Destination", Category::Privacy, {4, 4}},
    {"Packet Sniffing", Category::Privacy, {5, 5}},
    {"Screen Observation", Category::Privacy, {1, 2}},
    {"Hand Movement Observation", Category::Privacy, {1, 2}},
    {"User not notified", Category::Privacy, {4, 4}},
};

constexpr std::string_view kPlacementStated =
    "placement stated by the case-study description";
constexpr std::string_view kPlacementAssigned =
    "placement assigned by this catalog; impact from the case-study tables";

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"sample-dos", "security", "privacy", "safety"};
  return names;
}

std::string_view builtin_tree_text(std::string_view name) {
  if (name == "sample-dos") return kSampleDos;
  if (name == "security") return kSecurity;
  if (name == "privacy") return kPrivacy;
  if (name == "safety") return kSafety;
  throw Error(Errc::UnknownCatalog, "no bundled tree named '" + std::string(name) + "'");
}

AttackTree builtin_tree(std::string_view name) {
  return parse_tree(builtin_tree_text(name));
}

CatalogEntry catalog_entry(std::string_view name) {
  CatalogEntry entry;
  entry.name = std::string(name);
  entry.tree = builtin_tree(name);
  std::string_view note = name == "sample-dos" ? kPlacementStated : kPlacementAssigned;
  for (const Node* node : preorder(entry.tree)) {
    if (node->is_leaf()) entry.provenance.emplace(node->path_id, note);
  }
  return entry;
}

ImpactRange impact_lookup(std::string_view event, Category category) {
  for (const ImpactRow& row : kImpactTable) {
    if (row.category == category && row.event == event) return row.range;
  }
  throw Error(Errc::UnknownEvent, "no impact entry for '" + std::string(event) + "' in " +
                                      std::string(to_string(category)));
}

}  // namespace atree
