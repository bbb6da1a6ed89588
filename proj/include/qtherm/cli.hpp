#pragma once

// Command-line front end. Exit codes: 0 success, 1 computation error
// (for example: still entangled at t_max), 2 usage or input error.

namespace qtherm {

int run_cli(int argc, const char* const* argv);

}  // namespace qtherm
