#pragma once

#include <ostream>
#include <span>
#include <string>

#include "detcs/fuzz.hpp"
#include "detcs/inequality.hpp"

namespace detcs::cli {

enum ExitCode : int {
    kVerified = 0,
    kInputError = 2,
    kInvariantViolation = 3,
};

std::string format_report_text(const CsReport& report);
// One self-contained JSON object on a single line.
std::string format_report_json(const CsReport& report);
std::string format_fuzz_summary(const fuzz::FuzzSummary& summary);

// Entry point behind the `detcs` binary. args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace detcs::cli
