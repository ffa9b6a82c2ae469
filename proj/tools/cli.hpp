#pragma once

// Command-line front end; main() forwards here so tests can drive it.

#include <iosfwd>
#include <string>
#include <vector>

namespace tcq::cli {

// args excludes the program name. Returns the process exit code:
// 0 success, 1 usage, 2 parse, 3 validation, 4 internal consistency or a
// failed structural check.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace tcq::cli
