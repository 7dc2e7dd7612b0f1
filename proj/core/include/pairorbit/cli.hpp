#pragma once

#include <iosfwd>

namespace pairorbit::cli {

/// Entry point of the command-line tool. Commands: classify, diagram,
/// caustics, initcond, simulate, xcheck.
/// Exit codes: 0 success (collision truncation included), 2 validation
/// failure (before any file is created), 3 runtime failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pairorbit::cli
