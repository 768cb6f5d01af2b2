#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace prunix::cli {

// Exit codes: 0 success or verdict true, 1 verdict false, 2 usage or input
// error. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prunix::cli
