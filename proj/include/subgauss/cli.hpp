#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subgauss {

// Full command-line entry point. args excludes the program name.
// Exit codes: 0 success, 1 audit verdict fail, 2 usage or IO error.
// Errors are reported as one-line JSON on err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subgauss
