#pragma once

// Command-line front end. Exit codes: 0 all checks passed, 1 a verification
// failed, 2 usage or parse error, 3 resource bound exceeded.

#include <iosfwd>
#include <string>
#include <vector>

namespace oreforge {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oreforge
