#pragma once

#include <ostream>

namespace freemult::cli {

enum ExitCode : int { ok = 0, failure = 1, bad_input = 2 };

// Entry point of the freemult tool. Reports go to the -o file or to `out`;
// diagnostics go to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace freemult::cli
