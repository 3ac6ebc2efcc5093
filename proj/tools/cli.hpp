#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orbitkit::cli
{
    enum ExitCode : int
    {
        kSuccess = 0,
        kDomainFailure = 1,
        kInputFailure = 2,
    };

    /// Runs the command line `args` (args[0] is the program name). Normal
    /// output goes to `out` unless --out redirects it to a file;
    /// diagnostics go to `err`.
    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
} // namespace orbitkit::cli
