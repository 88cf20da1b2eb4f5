#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace higgs::cli {

/// Runs one command line (args excludes the program name). Reports go to
/// `out` unless an output file is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace higgs::cli
