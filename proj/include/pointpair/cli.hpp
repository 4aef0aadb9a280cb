#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pointpair::cli {

enum ExitCode : int {
    kOk = 0,
    kValidation = 2,
    kNumerical = 3,
};

/// Runs the `ppf` command line. `args` excludes the program name. Summary and
/// detail records go to `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

} // namespace pointpair::cli
