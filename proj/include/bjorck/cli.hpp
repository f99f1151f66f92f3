#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bjorck::cli {

enum exit_code : int {
  ok = 0,
  usage_error = 1,      // bad flags, non-prime p, malformed range
  invariant_failed = 2, // a mathematical guarantee did not hold
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bjorck::cli
