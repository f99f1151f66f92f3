#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "bjorck/numtheory.hpp"
#include "bjorck/roots.hpp"

namespace bjorck {

// Largest |Im| tolerated on a Kloosterman sum before it is reported real.
inline constexpr double kloosterman_imag_tolerance = 1e-10;

struct kloosterman_value {
  std::int64_t a;
  std::int64_t b;
  std::int64_t p;
  double value;
};

/// Prime context bundled with its p-th roots of unity. Every exponential
/// sum below evaluates against one of these; the free functions build a
/// fresh one per call.
class sum_context {
 public:
  explicit sum_context(std::int64_t p) : primes_(p), zeta_(p) {}

  const prime_context& primes() const noexcept { return primes_; }
  std::int64_t p() const noexcept { return primes_.p(); }
  int chi(std::int64_t k) const noexcept { return primes_.chi(k); }
  std::complex<double> zeta(std::int64_t j) const noexcept { return zeta_(j); }

  // K[a, b; p] = sum_{x != 0} zeta^(a x + b / x)
  kloosterman_value kloosterman(std::int64_t a, std::int64_t b) const;

  // tau[a; p] = sum_k chi(k) zeta^(a k)
  std::complex<double> gauss_sum(std::int64_t a) const;

  // sum_x chi(x^2 - 4a) zeta^x; equals K[1, a; p].
  double salie_form(std::int64_t a) const;

  // card{x != 0 : x + a / x = t}
  std::int64_t jacobsthal_count(std::int64_t t, std::int64_t a) const;

 private:
  prime_context primes_;
  unit_roots zeta_;
};

kloosterman_value kloosterman(std::int64_t a, std::int64_t b, std::int64_t p);

std::complex<double> gauss_sum(std::int64_t a, std::int64_t p);

// epsilon chi(a) sqrt(p), epsilon = 1 or i by p mod 4.
std::complex<double> gauss_sum_closed_form(std::int64_t a, std::int64_t p);

double salie_form(std::int64_t a, std::int64_t p);

std::int64_t jacobsthal_count(std::int64_t t, std::int64_t a, std::int64_t p);

enum class char_method { direct, kloosterman };

// A_p(chi)[m, n] for m, n nonzero mod p.
std::complex<double> char_ambiguity(const sum_context& ctx, std::int64_t m, std::int64_t n,
                                    char_method method);
std::complex<double> char_ambiguity(std::int64_t p, std::int64_t m, std::int64_t n,
                                    char_method method = char_method::direct);

struct weil_report {
  std::int64_t p;
  double max_ratio;     // max_a |K[1, a; p]| / (2 sqrt p)
  std::int64_t worst_a; // smallest a attaining it
};

weil_report weil_audit(std::int64_t p);

// {"p":...,"max_ratio":...,"worst_a":...}
std::string to_json(const weil_report& r);

}  // namespace bjorck
