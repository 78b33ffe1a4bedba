#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fgsolve::cli {

/// Process exit codes.
enum Exit : int
{
    ok = 0,
    no_solution = 1,
    timed_out = 2,
    usage = 64,
    io_error = 74,
};

/// Runs one command line (without the program name). All output goes to
/// `out` and `err`; nothing touches the process streams.
auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

} // namespace fgsolve::cli
