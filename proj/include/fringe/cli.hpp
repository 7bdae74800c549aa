#pragma once

namespace fringe {

/// Entry point of the `fringeworks` tool. Returns 0 on success, 1 on a
/// validation error, 2 on a numerical failure.
int run_cli(int argc, char** argv);

}  // namespace fringe
