#pragma once

#include "qnv/errors.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace qnv {

enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 2,
    kExitSpec = 3,
    kExitVerify = 4,
    kExitResource = 5,
};

int exit_code(ErrorKind kind) noexcept;

/// qnv classify|price|verify|defect --config FILE [--threads N] [--format json|csv] [--timing]
/// `args` excludes the program name. Output goes to `out` (or the configured
/// output.path), diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qnv
