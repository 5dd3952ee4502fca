#pragma once

#include <iosfwd>

namespace subplan::cli {

/// Parses argv, dispatches to the command implementations and maps errors
/// to exit codes: 0 computation completed, 1 usage, 2 input error,
/// 3 domain error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace subplan::cli
