// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace migmap::cli {

/// Entry point behind the migmap executable. Returns 0 on success, 1 when a
/// domain or I/O error stopped the command, 2 on command-line usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace migmap::cli
