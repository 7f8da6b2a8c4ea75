#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ocm {

// Entry point of the command-line tool. Subcommands: simulate, analyze,
// equilibrium, sweep, legacy-ne, dump-derivative-curve. Returns 0 on
// success, 1 on any error; errors print a single machine-readable line
// `error code=<Code> message="..."` to err.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ocm
