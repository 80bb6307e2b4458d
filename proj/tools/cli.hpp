#pragma once

#include <iosfwd>

namespace veracity {

// Exit status: 0 success, 1 proof invalid, 2 usage/parse/IO error,
// 3 the server could not start.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace veracity
