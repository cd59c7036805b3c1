#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cellrev::cli {

enum ExitCode { Ok = 0, DomainFailure = 1, UsageFailure = 2 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cellrev::cli
