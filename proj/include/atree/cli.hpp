#pragma once

#include <iosfwd>

namespace atree {

// Runs one `atree` invocation. Reports go to `out`, diagnostics to `err`.
// Exit codes: 0 success, 1 input parse/validation error, 2 usage error,
// 3 simulation oracle check failed.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace atree
