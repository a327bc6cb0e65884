#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fpsearch {

// Full command-line driver, argv-style arguments without the program name.
// Normal output goes to out, diagnostics to err. Returns the process exit
// code: 0 ok, 1 verification failure, 2 usage error, 3 I/O error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fpsearch
