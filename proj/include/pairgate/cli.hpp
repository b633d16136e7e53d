#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pairgate::cli
{
enum ExitCode : int
{
    Success = 0,
    ValidationError = 2,
    IoFailure = 3,
};

/// Run the pairgate command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
}  // namespace pairgate::cli
