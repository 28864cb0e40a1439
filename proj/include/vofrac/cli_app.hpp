#pragma once

namespace vofrac::cli {

/// Entry point of the command-line tool. Exit codes: 0 success, 1 input
/// validation failure, 2 computational failure (band/pole/resolution and
/// friends), 3 solver non-convergence under --strict. Diagnostics go to
/// stderr as single `E:<code>: message` lines.
int run(int argc, const char* const* argv);

}  // namespace vofrac::cli
