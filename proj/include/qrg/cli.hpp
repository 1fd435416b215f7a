#pragma once

namespace qrg {

// Full command-line front end.  Returns the process exit code:
//   0 success, 1 internal error, 2 input error, 3 cap exceeded,
//   4 violated mathematical guarantee.
int cli_main(int argc, const char* const* argv);

} // namespace qrg
