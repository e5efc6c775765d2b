#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace morphan::cli {

// Runs one CLI invocation. Data goes to `out`, diagnostics to `err`.
// Exit codes: 0 success, 1 analysis failure, 2 usage or input errors.
int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace morphan::cli
