#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace schreier {

// Executes one parsed command line (without the program name).
// Exit status: 0 success, 1 domain error, 2 syntax error, 3 inconclusive
// search. Results go to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schreier
