// Command-line front end: subcommands wiring configs to the library
// operations, emitting CSV or JSON tables.  Exit codes: 0 success,
// 1 validation error, 2 numerical failure (partial results noted).
#pragma once

namespace fracwell {

int run_cli(int argc, char** argv);

}  // namespace fracwell
