#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace bjorck {

/// Table of the N-th roots of unity, root(j) = exp(2 pi i j / N).
///
/// Exponents are reduced mod N in integers, so sums over Z/NZ never
/// accumulate phase error from floating-point angle arithmetic.
class unit_roots {
 public:
  explicit unit_roots(std::int64_t n);

  std::int64_t order() const noexcept { return n_; }

  std::complex<double> operator()(std::int64_t j) const noexcept {
    std::int64_t r = j % n_;
    if (r < 0) r += n_;
    return table_[static_cast<std::size_t>(r)];
  }

 private:
  std::int64_t n_;
  std::vector<std::complex<double>> table_;
};

}  // namespace bjorck
