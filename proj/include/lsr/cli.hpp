#pragma once

#include <iosfwd>

namespace lsr {

// Exit codes: 0 success, 1 configuration error, 2 numerical failure
// (including a missing interior critical point), 3 inadmissible regime.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lsr
