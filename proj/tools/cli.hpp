#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cycletheta::cli {

/// Exit code 0 on success, 1 on a library error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cycletheta::cli
