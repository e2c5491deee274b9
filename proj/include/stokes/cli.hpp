#pragma once

#include <iosfwd>

namespace stokes {

/// Entry point for the command-line tool. Subcommands: solve, converge,
/// bench, checkerboard. Returns 0 on success; on failure writes a single
/// "error: ..." line to `err` and returns nonzero.
int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stokes
