#pragma once

#include <complex>
#include <cstdint>

#include "bjorck/expsums.hpp"
#include "bjorck/sequences.hpp"

namespace bjorck {

/// Values of a Legendre-shaped sequence U (r on residues, s on
/// nonresidues, t at zero) and the derived split U = R + S chi + T delta.
struct mix_coefficients {
  cplx r, s, t;
  cplx R, S, T;

  static mix_coefficients from_values(cplx r, cplx s, cplx t);
};

// Reads r, s, t off u; throws errc::invalid_argument unless u is a
// function of the Legendre symbol.
mix_coefficients mix_coefficients_of(const unimodular_sequence& u);

// Coefficients of bjorck_sequence(p).
mix_coefficients bjorck_mix_coefficients(std::int64_t p);

struct error_terms {
  cplx e1;
  cplx e2;
  std::int64_t m;
  std::int64_t n;
};

error_terms evaluate_error_terms(const mix_coefficients& c, const prime_context& ctx,
                                 std::int64_t m, std::int64_t n);
error_terms evaluate_error_terms(const mix_coefficients& c, std::int64_t p, std::int64_t m,
                                 std::int64_t n);

/// Rebuilds A_p(U)[m, n] as |S|^2 A_p(chi)[m, n] + (E1 + E2) / p for one prime.
class decomposer {
 public:
  explicit decomposer(std::int64_t p);
  decomposer(const sum_context& sums, const mix_coefficients& coeffs);

  const mix_coefficients& coefficients() const noexcept { return coeffs_; }
  const sum_context& sums() const noexcept { return sums_; }

  cplx reconstruct(std::int64_t m, std::int64_t n,
                   char_method method = char_method::direct) const;

 private:
  sum_context sums_;
  mix_coefficients coeffs_;
};

cplx reconstruct_ambiguity(std::int64_t p, std::int64_t m, std::int64_t n);

struct realbound_result {
  double lhs;  // |z X + (1 - z^2) Y|
  double rhs;  // sqrt(X^2 + 4 Y^2)
};

realbound_result realbound(cplx z, double x, double y);

// 2/sqrt(p) + 4/p for p = 1 mod 4, 2/sqrt(p) + 4/p^(3/2) for p = 3 mod 4.
double mbound(std::int64_t p);

// 2(p+3)/(sqrt(p)(p+1)): the intermediate estimate for p = 3 mod 4.
double mbound_tight_3mod4(std::int64_t p);

}  // namespace bjorck
