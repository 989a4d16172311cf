#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toric::cli {

// Runs one command. Exit codes: 0 success, 1 internal failure, 2 missing assumption,
// 3 malformed or out-of-domain input.
int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace toric::cli
