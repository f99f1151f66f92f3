#pragma once

#include <stdexcept>
#include <string>

namespace bjorck {

enum class errc {
  invalid_prime,
  division_by_zero,
  degenerate_chirp,
  out_of_domain,
  invalid_argument,
  table_too_large,
  invalid_range,
  invariant_violation,
};

// Single exception type for the library; callers switch on code().
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace bjorck
