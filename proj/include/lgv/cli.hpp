#pragma once

namespace lgv {

// Full command-line front end. Returns the process exit code:
//   0 success, 2 usage or argument errors, 3 numeric contract violations.
int run_cli(int argc, const char* const* argv);

}  // namespace lgv
