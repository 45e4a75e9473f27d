#pragma once

#include <iosfwd>

namespace graphlearn {

/// Entry point of the graphlearn command line tool. Returns the process exit
/// code; on failure writes a single "error: ..." line to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace graphlearn
