#pragma once

#include <iosfwd>

namespace jrank::cli {

/// Runs the jrank command line. Returns 0 on success, 1 on a validation
/// error, 2 on a runtime error (budget, network, I/O).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jrank::cli
