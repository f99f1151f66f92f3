#include "bjorck/roots.hpp"

#include <cmath>
#include <numbers>

#include "bjorck/error.hpp"

namespace bjorck {

unit_roots::unit_roots(std::int64_t n) : n_(n) {
  if (n < 1) throw error(errc::invalid_argument, "root table order must be positive");
  table_.resize(static_cast<std::size_t>(n));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::int64_t j = 0; j < n; ++j) {
    // |angle| <= pi
    const std::int64_t folded = 2 * j > n ? j - n : j;
    const double a = step * static_cast<double>(folded);
    table_[static_cast<std::size_t>(j)] = {std::cos(a), std::sin(a)};
  }
}

}  // namespace bjorck
