#pragma once

#include <ostream>

namespace tumorsim {

/// Command-line entry point. Returns kExitOk, kExitConfig for rejected
/// arguments or configuration, kExitBlowUp when any run blew up, and
/// kExitFailure otherwise.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tumorsim
