#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace atree {

// Machine-readable failure categories. The CLI maps these onto exit codes.
enum class Errc {
  Syntax,          // malformed DSL input
  Validation,      // structurally representable but invalid tree
  UnknownPath,     // a path_id that does not exist in the target tree
  NotALeaf,        // a path_id that names a gate where a leaf is required
  EmptyTree,       // an operation would remove the entire tree
  NegParam,        // negative frequency/duration
  BadWindow,       // observation window <= 0
  BadSpec,         // empty or out-of-range analysis specification
  MalformedCsv,    // measurement CSV does not match the schema
  UnknownCatalog,  // not one of the bundled tree names
  UnknownEvent,    // event/category pair missing from the impact tables
  Io,              // file could not be read or written
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Syntax errors additionally carry the 1-based source position.
class ParseError : public Error {
 public:
  ParseError(Errc code, const std::string& message, int line, int column)
      : Error(code, message + " (line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace atree
