#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sba::cli {

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 when a check fails or a
/// result is undefined, 2 on bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sba::cli
