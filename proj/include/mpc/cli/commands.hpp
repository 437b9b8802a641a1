#pragma once

#include <iosfwd>

#include "mpc/solver.hpp"

namespace mpc::cli {

/// 0 feasible, 2 infeasible with certificate, 3 undetermined.
int exit_code(SolveStatus s);

/// Entry point of the mpcsolve tool: subcommands solve, normalize, dsg, bench.
/// Returns the process exit code; usage and I/O errors give 1.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mpc::cli
