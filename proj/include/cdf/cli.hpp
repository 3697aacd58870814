#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cdf {

// args excludes the program name. Exit codes: 0 success, 1 property or verification
// failure, 2 input, usage or budget error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdf
