#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lpa {

/// Runs the `lpa` command line. Reports go to `out`, diagnostics to `err`.
/// Returns 0 when every check passes, 1 when a check fails, 2 on errors.
/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpa
