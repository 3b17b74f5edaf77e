#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace idfnl {

// Command-line driver behind the `idfnl` binary, callable in-process for
// tests. Exit codes: 0 success / property holds, 1 property fails or
// countermodel found, 2 usage or parse error, 3 resource abort.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace idfnl
