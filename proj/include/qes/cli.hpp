#pragma once

#include <iosfwd>

namespace qes {

/// Exit codes: 0 success, 1 failed verification or numerical error,
/// 2 invalid arguments, 3 I/O error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qes
