#include <cmath>
#include <numbers>

#include "bjorck/decomposition.hpp"
#include "bjorck/error.hpp"
#include "bjorck/transform.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bjorck;

namespace {

const cplx I{0.0, 1.0};

cplx zeta_pow(std::int64_t e, std::int64_t p) { return oracle::root(e, p); }

std::vector<cplx> chi_vec(std::int64_t p) {
  const auto t = oracle::legendre_table(p);
  return {t.begin(), t.end()};
}

// B_p(F, G)[m, n], the cross-ambiguity used inside the decomposition.
cplx cross(const std::vector<cplx>& f, const std::vector<cplx>& g, std::int64_t m, std::int64_t n) {
  return oracle::cross_ambiguity(f, g, m, n);
}

}  // namespace

TEST_CASE("mix coefficients for p = 13") {
  const auto c = bjorck_mix_coefficients(13);
  const double s = std::sqrt(13.0);
  CHECK(std::abs(c.R - 1.0 / (1.0 + s)) < 1e-12);
  CHECK(c.R.real() == doctest::Approx(0.2171292).epsilon(1e-7));
  CHECK(std::abs(c.T - s / (1.0 + s)) < 1e-12);
  CHECK(std::abs(c.R + c.T - c.t) < 1e-15);
  CHECK(std::abs(c.t - 1.0) < 1e-15);
}

TEST_CASE("mix coefficients match the closed forms in both classes") {
  for (auto p : oracle::odd_primes_upto(600)) {
    const auto c = bjorck_mix_coefficients(p);
    const double pd = static_cast<double>(p);
    const double s = std::sqrt(pd);
    CHECK(std::abs(c.R - (c.r + c.s) / 2.0) < 1e-15);
    CHECK(std::abs(c.S - (c.r - c.s) / 2.0) < 1e-15);
    CHECK(std::abs(c.T - (c.t - c.R)) < 1e-15);
    if (p % 4 == 1) {
      REQUIRE(std::abs(c.R - 1.0 / (1.0 + s)) < 1e-12);
      REQUIRE(std::abs(c.S - I * std::sqrt(2.0 * s + pd) / (1.0 + s)) < 1e-12);
      REQUIRE(std::abs(c.T - s / (1.0 + s)) < 1e-12);
    } else {
      const cplx den = 1.0 - I * s;
      REQUIRE(std::abs(c.R - 1.0 / den) < 1e-12);
      REQUIRE(std::abs(c.S - (-I * s) / den) < 1e-12);
      REQUIRE(std::abs(c.T - (-I * s) / den) < 1e-12);
      REQUIRE(std::norm(c.S) == doctest::Approx(pd / (pd + 1.0)).epsilon(1e-12));
    }
  }
  CHECK(std::norm(bjorck_mix_coefficients(7).S) == doctest::Approx(7.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("mix_coefficients_of rejects sequences that are not functions of chi") {
  CHECK_THROWS_AS((void)mix_coefficients_of(chirp(7, 1, 0)), error);
}

TEST_CASE("error terms reduce to the per-class closed forms") {
  for (auto p : oracle::odd_primes_upto(60)) {
    const auto c = bjorck_mix_coefficients(p);
    const prime_context ctx(p);
    const double pd = static_cast<double>(p);
    const double s = std::sqrt(pd);
    for (std::int64_t m = 1; m < p; ++m) {
      for (std::int64_t n = 1; n < p; ++n) {
        const auto e = evaluate_error_terms(c, ctx, m, n);
        const cplx z = zeta_pow(m * n, p);
        const double cm = ctx.chi(m), cn = ctx.chi(n);
        cplx e1, e2;
        if (p % 4 == 1) {
          e1 = s * (1.0 + z) / ((1.0 + s) * (1.0 + s));
          e2 = s / ((1.0 + s) * (1.0 + s)) * I * (1.0 - z) * (cm - cn) * std::sqrt(2.0 * s + pd);
        } else {
          e1 = I * s * (1.0 - z) / (pd + 1.0);
          e2 = pd * (1.0 - z) / (pd + 1.0) * (cm + cn);
        }
        REQUIRE(std::abs(e.e1 - e1) < 1e-12);
        REQUIRE(std::abs(e.e2 - e2) < 1e-10);
      }
    }
  }
}

TEST_CASE("error term examples") {
  const double s13 = std::sqrt(13.0);
  const auto e13 = evaluate_error_terms(bjorck_mix_coefficients(13), 13, 1, 1);
  CHECK(std::abs(e13.e1 - s13 * (1.0 + zeta_pow(1, 13)) / std::pow(1.0 + s13, 2)) < 1e-12);
  const double s7 = std::sqrt(7.0);
  const auto e7 = evaluate_error_terms(bjorck_mix_coefficients(7), 7, 1, 1);
  CHECK(std::abs(e7.e1 - I * s7 * (1.0 - zeta_pow(1, 7)) / 8.0) < 1e-12);
  CHECK(e7.m == 1);
  CHECK(e7.n == 1);
  // With the root of unity set to 1, E1 is real in the 1 mod 4 class.
  const auto c = bjorck_mix_coefficients(13);
  const cplx e1_at_one = c.R * std::conj(c.T) + std::conj(c.R) * c.T;
  CHECK(std::abs(e1_at_one - 2.0 * s13 / std::pow(1.0 + s13, 2)) < 1e-12);
  CHECK_THROWS_AS((void)evaluate_error_terms(c, 13, 0, 1), error);
  CHECK_THROWS_AS((void)evaluate_error_terms(c, 13, 2, 13), error);
}

TEST_CASE("reconstruction matches the direct ambiguity for p = 7 and 13, all pairs") {
  for (std::int64_t p : {7, 13}) {
    const auto u = bjorck_sequence(p);
    const decomposer d(p);
    for (std::int64_t m = 1; m < p; ++m)
      for (std::int64_t n = 1; n < p; ++n)
        REQUIRE(std::abs(d.reconstruct(m, n) - oracle::ambiguity(u.values(), m, n)) < 1e-10);
  }
}

TEST_CASE("reconstruction at p = 139") {
  const auto u = bjorck_sequence(139);
  CHECK(std::abs(reconstruct_ambiguity(139, 1, 1) - oracle::ambiguity(u.values(), 1, 1)) < 1e-10);
  CHECK_THROWS_AS((void)reconstruct_ambiguity(139, 0, 5), error);
}

TEST_CASE("reconstruction holds for arbitrary r, s, t and both routes") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  for (std::int64_t p : {11, 13, 19, 29}) {
    const cplx r{g(rng), g(rng)}, s{g(rng), g(rng)}, t{g(rng), g(rng)};
    const auto c = mix_coefficients::from_values(r, s, t);
    const auto chi = oracle::legendre_table(p);
    std::vector<cplx> U(static_cast<std::size_t>(p));
    for (std::int64_t k = 0; k < p; ++k) {
      const int ck = chi[static_cast<std::size_t>(k)];
      U[static_cast<std::size_t>(k)] = ck == 0 ? t : (ck > 0 ? r : s);
    }
    const decomposer d(sum_context(p), c);
    for (std::int64_t m = 1; m < p; ++m) {
      for (std::int64_t n = 1; n < p; ++n) {
        const cplx want = oracle::ambiguity(U, m, n);
        REQUIRE(std::abs(d.reconstruct(m, n, char_method::direct) - want) < 1e-10);
        REQUIRE(std::abs(d.reconstruct(m, n, char_method::kloosterman) - want) < 1e-10);
      }
    }
  }
}

TEST_CASE("the nine cross-ambiguity terms") {
  for (std::int64_t p : {5, 7, 13, 23}) {
    const std::vector<cplx> eta(static_cast<std::size_t>(p), 1.0);
    std::vector<cplx> delta(static_cast<std::size_t>(p), 0.0);
    delta[0] = 1.0;
    const auto chi = chi_vec(p);
    const cplx eps = p % 4 == 1 ? cplx{1.0} : I;
    const double pd = static_cast<double>(p);
    const double sp = std::sqrt(pd);
    const auto leg = [&](std::int64_t k) { return chi[static_cast<std::size_t>(((k % p) + p) % p)].real(); };
    for (std::int64_t m = 1; m < p; ++m) {
      for (std::int64_t n = 1; n < p; ++n) {
        const cplx z = zeta_pow(m * n, p);
        CHECK(std::abs(cross(delta, delta, m, n)) < 1e-14);
        CHECK(std::abs(cross(eta, eta, m, n)) < 1e-12);
        CHECK(std::abs(pd * cross(eta, delta, m, n) - 1.0) < 1e-12);
        CHECK(std::abs(pd * cross(delta, eta, m, n) - z) < 1e-12);
        CHECK(std::abs(pd * cross(chi, delta, m, n) - leg(m)) < 1e-12);
        CHECK(std::abs(pd * cross(delta, chi, m, n) - z * leg(-m)) < 1e-12);
        CHECK(std::abs(pd * cross(eta, chi, m, n) - eps * leg(-n) * sp) < 1e-10);
        CHECK(std::abs(pd * cross(chi, eta, m, n) - eps * z * leg(-n) * sp) < 1e-10);
      }
    }
  }
}

TEST_CASE("realbound examples") {
  auto r = realbound(1.0, 5.0, 9.0);
  CHECK(r.lhs == doctest::Approx(5.0));
  CHECK(r.rhs == doctest::Approx(std::sqrt(349.0)));
  r = realbound(I, 3.0, 1.0);
  CHECK(r.lhs == doctest::Approx(std::sqrt(13.0)));
  CHECK(r.rhs == doctest::Approx(std::sqrt(13.0)));
  r = realbound(std::polar(1.0, std::numbers::pi / 3.0), 1.0, 1.0);
  CHECK(r.lhs == doctest::Approx(2.0));
  CHECK(r.rhs == doctest::Approx(std::sqrt(5.0)));
  try {
    (void)realbound({1.0, 1e-4}, 1.0, 1.0);
    FAIL("expected invalid_argument");
  } catch (const error& e) {
    CHECK(e.code() == errc::invalid_argument);
  }
}

TEST_CASE("realbound holds on random samples") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> mag(-2.0 * std::sqrt(5000.0), 2.0 * std::sqrt(5000.0));
  std::uniform_real_distribution<double> small(-2.0, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const auto r = realbound(std::polar(1.0, ang(rng)), mag(rng), small(rng));
    REQUIRE(r.lhs <= r.rhs + 1e-12);
  }
}

TEST_CASE("mbound values") {
  CHECK(std::abs(mbound(13) - 0.862392) < 1e-6);
  CHECK(std::abs(mbound(7) - 0.971909) < 1e-6);
  CHECK(std::abs(mbound(1009) - (2.0 / std::sqrt(1009.0) + 4.0 / 1009.0)) < 1e-15);
  CHECK(std::abs(mbound(1009) - 0.066928) < 1e-6);
  CHECK(0.065505 < mbound(1009));
  CHECK(mbound_tight_3mod4(7) <= mbound(7));
  CHECK_THROWS_AS((void)mbound(9), error);
}

TEST_CASE("measured max sits below both bounds") {
  for (auto p : oracle::odd_primes_upto(500)) {
    const double mx = ambiguity_max_orbit(bjorck_sequence(p)).max_abs;
    REQUIRE_MESSAGE(mx < mbound(p), p);
    if (p % 4 == 3) REQUIRE_MESSAGE(mx <= mbound_tight_3mod4(p), p);
  }
}
