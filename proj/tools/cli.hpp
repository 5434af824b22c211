#pragma once

// Command-line front end. Exit status: 0 success, 1 solver error or failed
// check, 2 usage or input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace dqmax {

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace dqmax
