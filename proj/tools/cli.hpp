#pragma once

#include <iosfwd>

namespace ivsolve {

// Full command-line driver; returns the process exit code (0 success,
// 1 input error, 2 box budget exceeded with partial results written).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ivsolve
