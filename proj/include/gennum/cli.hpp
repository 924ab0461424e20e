#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gennum::cli {

// exit codes: 0 all checks pass, 1 witness found, 2 certificate unavailable,
// 3 invalid input
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gennum::cli
