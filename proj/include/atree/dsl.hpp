#pragma once

#include <string>
#include <string_view>

#include "atree/tree.hpp"

namespace atree {

// Parses a complete `.atree` document:
//
//   document  := "tree" STRING gatekind "{" child* "}"
//   gatekind  := "and" | "or"
//   child     := gate | leaf
//   gate      := gatekind STRING attrs? "{" child* "}"
//   leaf      := "leaf" STRING attrs
//   attr      := "component=" SLUG
//              | "freq=" NUM "/day"
//              | "dur=" NUM "min"
//              | "impact=" INT ("-" INT)?
//              | "category=" ("security" | "privacy" | "safety")
//   STRING    := double-quoted, \" and \\ escapes
//   SLUG      := [a-z][a-z0-9]*(-[a-z0-9]+)*
//   NUM       := non-negative decimal; INT := 1..5
//
// `#` starts a line comment. Empty gate bodies are accepted by the grammar so
// validation can report EMPTY_GATE with a path instead of a bare token error.
// Omitted leaf attributes default to freq=0/day dur=0min impact=1
// category=security; a single impact value k means the range [k,k].
//
// Throws ParseError (Errc::Syntax) with line/column on token-level problems
// and Error (Errc::Validation) when the parsed tree violates an invariant.
AttackTree parse_tree(std::string_view text);

// Same grammar, but invariant violations are returned instead of thrown so
// callers can report all of them. Token-level errors still throw ParseError.
AttackTree parse_tree(std::string_view text, std::vector<Violation>& violations);

// Emits the canonical form: two-space indentation, attributes in fixed order
// (component, freq, dur, impact, category), children in original order, one
// trailing newline. parse_tree(serialize_tree(t)) equals t structurally, and
// serializing an already-canonical document reproduces it byte for byte.
std::string serialize_tree(const AttackTree& tree);

// Shortest decimal rendering that parses back to the identical double.
std::string format_dsl_number(double value);

}  // namespace atree
