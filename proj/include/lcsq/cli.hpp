#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lcsq::cli {

/// Exit codes: 0 success, 1 mathematical-claim violation, 2 usage error,
/// 3 runtime error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lcsq::cli
