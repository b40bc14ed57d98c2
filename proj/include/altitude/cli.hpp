#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace altitude {

// Command-line front end. `args` excludes the program name. Reports go to
// `out` (or --output), diagnostics and logs to `err`.
// Exit status: 0 success, 1 invalid input or usage error, 2 internal
// failure (a guaranteed property did not hold, or a verify criterion failed).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace altitude
