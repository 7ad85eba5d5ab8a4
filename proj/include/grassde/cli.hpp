#pragma once

#include <iosfwd>

namespace grassde {

/// Entry point of the `grassde` command-line tool.
///
/// Exit codes: 0 when every requested experiment completed, 1 when an
/// experiment or I/O step failed, 2 on invalid usage.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grassde
