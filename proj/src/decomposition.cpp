#include "bjorck/decomposition.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "bjorck/error.hpp"
#include "bjorck/transform.hpp"

namespace bjorck {

mix_coefficients mix_coefficients::from_values(cplx r, cplx s, cplx t) {
  mix_coefficients c{r, s, t, {}, {}, {}};
  c.R = (r + s) / 2.0;
  c.S = (r - s) / 2.0;
  c.T = t - c.R;
  return c;
}

mix_coefficients mix_coefficients_of(const unimodular_sequence& u) {
  if (!is_legendre_invariant(u)) {
    throw error(errc::invalid_argument, "sequence is not a function of the Legendre symbol");
  }
  const prime_context ctx(u.p());
  return mix_coefficients::from_values(u[1], u[static_cast<std::size_t>(ctx.least_nonresidue())], u[0]);
}

mix_coefficients bjorck_mix_coefficients(std::int64_t p) { return mix_coefficients_of(bjorck_sequence(p)); }

error_terms evaluate_error_terms(const mix_coefficients& c, const prime_context& ctx,
                                 std::int64_t m, std::int64_t n) {
  const std::int64_t p = ctx.p();
  if (mod(m, p) == 0 || mod(n, p) == 0) {
    throw error(errc::out_of_domain, fmt::format("error terms need m, n nonzero mod {}", p));
  }
  const auto mn = static_cast<double>(mulmod(mod(m, p), mod(n, p), p));
  const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * mn / static_cast<double>(p));
  const double chi_m = ctx.chi(m);
  const double chi_n = ctx.chi(n);
  const double sqrt_p = std::sqrt(static_cast<double>(p));
  const auto cj = [](cplx v) { return std::conj(v); };

  error_terms out{};
  out.m = m;
  out.n = n;
  out.e1 = c.R * cj(c.T) + cj(c.R) * c.T * z;
  const cplx rs = c.R * cj(c.S) + cj(c.R) * c.S * z;
  if (ctx.cls() == residue_class::one_mod_4) {
    out.e2 = (c.S * cj(c.T) + cj(c.S) * c.T * z) * chi_m + rs * chi_n * sqrt_p;
  } else {
    const cplx i{0.0, 1.0};
    out.e2 = (c.S * cj(c.T) - cj(c.S) * c.T * z) * chi_m - rs * i * chi_n * sqrt_p;
  }
  return out;
}

error_terms evaluate_error_terms(const mix_coefficients& c, std::int64_t p, std::int64_t m,
                                 std::int64_t n) {
  return evaluate_error_terms(c, prime_context(p), m, n);
}

decomposer::decomposer(std::int64_t p) : sums_(p), coeffs_(bjorck_mix_coefficients(p)) {}

decomposer::decomposer(const sum_context& sums, const mix_coefficients& coeffs)
    : sums_(sums), coeffs_(coeffs) {}

cplx decomposer::reconstruct(std::int64_t m, std::int64_t n, char_method method) const {
  const error_terms e = evaluate_error_terms(coeffs_, sums_.primes(), m, n);
  const double s2 = std::norm(coeffs_.S);
  const double inv_p = 1.0 / static_cast<double>(sums_.p());
  return s2 * char_ambiguity(sums_, m, n, method) + (e.e1 + e.e2) * inv_p;
}

cplx reconstruct_ambiguity(std::int64_t p, std::int64_t m, std::int64_t n) {
  return decomposer(p).reconstruct(m, n);
}

realbound_result realbound(cplx z, double x, double y) {
  if (std::abs(std::abs(z) - 1.0) > 1e-12) {
    throw error(errc::invalid_argument, fmt::format("|z| = {:.17g}, expected 1", std::abs(z)));
  }
  return {std::abs(z * x + (1.0 - z * z) * y), std::sqrt(x * x + 4.0 * y * y)};
}

double mbound(std::int64_t p) {
  require_odd_prime(p);
  const double pd = static_cast<double>(p);
  const double base = 2.0 / std::sqrt(pd);
  return p % 4 == 1 ? base + 4.0 / pd : base + 4.0 / (pd * std::sqrt(pd));
}

double mbound_tight_3mod4(std::int64_t p) {
  require_odd_prime(p);
  const double pd = static_cast<double>(p);
  return 2.0 * (pd + 3.0) / (std::sqrt(pd) * (pd + 1.0));
}

}  // namespace bjorck
