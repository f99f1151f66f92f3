#include <cmath>
#include <numbers>

#include "bjorck/error.hpp"
#include "bjorck/expsums.hpp"
#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"

using namespace bjorck;

namespace {

// sum_{x != 0} exp(2 pi i (a x + b / x) / p), complex, by brute force.
oracle::cplx kloosterman_oracle(std::int64_t a, std::int64_t b, std::int64_t p) {
  oracle::cplx acc{};
  for (std::int64_t x = 1; x < p; ++x) acc += oracle::root(a * x + b * oracle::inverse(x, p), p);
  return acc;
}

}  // namespace

TEST_CASE("kloosterman examples") {
  CHECK(kloosterman(0, 0, 5).value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(kloosterman(1, 0, 7).value == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(kloosterman(1, 1, 5).value - (3.0 - std::sqrt(5.0)) / 2.0) < 1e-12);
  const auto k = kloosterman(2, 3, 11);
  CHECK(k.a == 2);
  CHECK(k.b == 3);
  CHECK(k.p == 11);
  CHECK_THROWS_AS((void)kloosterman(1, 1, 9), error);
}

TEST_CASE("Kloosterman sums are real and symmetric under (a,b) -> (-a,-b)") {
  for (auto p : oracle::odd_primes_upto(101)) {
    const sum_context ctx(p);
    for (std::int64_t a = 0; a < p; ++a) {
      for (std::int64_t b = 0; b < p; ++b) {
        const auto direct = kloosterman_oracle(a, b, p);
        REQUIRE(std::abs(direct.imag()) < 1e-10);
        const double v = ctx.kloosterman(a, b).value;
        REQUIRE(std::abs(v - direct.real()) < 1e-10);
        REQUIRE(std::abs(v - ctx.kloosterman(-a, -b).value) < 1e-10);
        if (a != 0 && b != 0) REQUIRE(std::abs(v) <= 2.0 * std::sqrt(static_cast<double>(p)));
      }
    }
  }
}

TEST_CASE("gauss_sum examples") {
  const auto t15 = gauss_sum(1, 5);
  CHECK(std::abs(t15 - std::complex<double>{std::sqrt(5.0), 0.0}) < 1e-10);
  const auto t13 = gauss_sum(1, 3);
  CHECK(std::abs(t13 - std::complex<double>{0.0, std::sqrt(3.0)}) < 1e-10);
  const auto t25 = gauss_sum(2, 5);
  CHECK(std::abs(t25 - std::complex<double>{-std::sqrt(5.0), 0.0}) < 1e-10);
}

TEST_CASE("Gauss sums equal epsilon chi(a) sqrt(p)") {
  for (auto p : oracle::odd_primes_upto(101)) {
    const sum_context ctx(p);
    const auto chi = oracle::legendre_table(p);
    const std::complex<double> eps = p % 4 == 1 ? std::complex<double>{1, 0} : std::complex<double>{0, 1};
    for (std::int64_t a = 1; a < p; ++a) {
      const auto want = eps * static_cast<double>(chi[static_cast<std::size_t>(a)]) * std::sqrt(static_cast<double>(p));
      REQUIRE(std::abs(ctx.gauss_sum(a) - want) < 1e-10);
      REQUIRE(std::abs(gauss_sum_closed_form(a, p) - want) < 1e-15);
    }
    CHECK(std::abs(ctx.gauss_sum(0)) < 1e-10);
  }
}

TEST_CASE("salie_form examples") {
  const double want7 = 2.0 * std::cos(4.0 * std::numbers::pi / 7.0) + 4.0 * std::cos(2.0 * std::numbers::pi / 7.0);
  CHECK(std::abs(salie_form(1, 7) - want7) < 1e-12);
  CHECK(std::abs(kloosterman(1, 1, 7).value - want7) < 1e-12);
  CHECK(std::abs(salie_form(1, 5) - (3.0 - std::sqrt(5.0)) / 2.0) < 1e-12);
  CHECK(std::abs(salie_form(3, 11) - kloosterman(1, 3, 11).value) < 1e-9);
  try {
    (void)salie_form(7, 7);
    FAIL("expected invalid_argument");
  } catch (const error& e) {
    CHECK(e.code() == errc::invalid_argument);
  }
}

TEST_CASE("Salie identity for every unit a, p <= 101") {
  for (auto p : oracle::odd_primes_upto(101)) {
    const sum_context ctx(p);
    for (std::int64_t a = 1; a < p; ++a) {
      REQUIRE(std::abs(ctx.salie_form(a) - ctx.kloosterman(1, a).value) < 1e-9);
    }
  }
}

TEST_CASE("jacobsthal_count examples") {
  CHECK(jacobsthal_count(2, 1, 7) == 1);
  CHECK(jacobsthal_count(0, 1, 7) == 0);
  CHECK(jacobsthal_count(3, 1, 7) == 0);
  CHECK_THROWS_AS((void)jacobsthal_count(1, 0, 7), error);
}

TEST_CASE("Jacobsthal fiber count N[t] = 1 + chi(t^2 - 4a), exhaustive to 31") {
  for (auto p : oracle::odd_primes_upto(31)) {
    const sum_context ctx(p);
    const auto chi = oracle::legendre_table(p);
    for (std::int64_t a = 1; a < p; ++a) {
      for (std::int64_t t = 0; t < p; ++t) {
        const auto d = static_cast<std::size_t>(((t * t - 4 * a) % p + p) % p);
        REQUIRE(ctx.jacobsthal_count(t, a) == 1 + chi[d]);
      }
    }
  }
}

TEST_CASE("Jacobsthal aggregate identity for arbitrary F") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (auto p : oracle::odd_primes_upto(31)) {
    const auto chi = oracle::legendre_table(p);
    for (std::int64_t a = 1; a < p; ++a) {
      std::vector<std::complex<double>> f(static_cast<std::size_t>(p));
      for (auto& z : f) z = {g(rng), g(rng)};
      std::complex<double> lhs{}, rhs{};
      for (std::int64_t x = 1; x < p; ++x) lhs += f[static_cast<std::size_t>((x + a * oracle::inverse(x, p)) % p)];
      for (std::int64_t x = 0; x < p; ++x) {
        const auto d = static_cast<std::size_t>(((x * x - 4 * a) % p + p) % p);
        rhs += (1.0 + chi[d]) * f[static_cast<std::size_t>(x)];
      }
      REQUIRE(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("char_ambiguity: direct and Kloosterman routes agree; bound and phase") {
  for (auto p : oracle::odd_primes_upto(101)) {
    const sum_context ctx(p);
    const double bound = 2.0 / std::sqrt(static_cast<double>(p));
    for (std::int64_t m = 1; m < p; ++m) {
      for (std::int64_t n = 1; n < p; ++n) {
        const auto d = char_ambiguity(ctx, m, n, char_method::direct);
        const auto k = char_ambiguity(ctx, m, n, char_method::kloosterman);
        REQUIRE(std::abs(d - k) < 1e-10);
        REQUIRE(std::abs(d) <= bound);
        const auto phase = std::polar(1.0, -std::numbers::pi * static_cast<double>(m * n) / static_cast<double>(p));
        REQUIRE(std::abs((phase * d).imag()) < 1e-10);
      }
    }
  }
}

TEST_CASE("char_ambiguity direct route matches the brute-force ambiguity of chi") {
  for (std::int64_t p : {7, 13, 31}) {
    const auto chi = oracle::legendre_table(p);
    std::vector<oracle::cplx> v(chi.begin(), chi.end());
    for (std::int64_t m = 1; m < p; ++m)
      for (std::int64_t n = 1; n < p; ++n)
        REQUIRE(std::abs(char_ambiguity(p, m, n) - oracle::ambiguity(v, m, n)) < 1e-12);
  }
}

TEST_CASE("char_ambiguity rejects zero indices") {
  for (auto [m, n] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{7, 3}}) {
    try {
      (void)char_ambiguity(7, m, n);
      FAIL("expected out_of_domain");
    } catch (const error& e) {
      CHECK(e.code() == errc::out_of_domain);
    }
  }
}

TEST_CASE("weil_audit") {
  const auto r5 = weil_audit(5);
  CHECK(r5.max_ratio <= 1.0);
  CHECK(r5.max_ratio > 0.0);
  CHECK(std::abs(kloosterman(1, 1, 7).value) == doctest::Approx(2.048917).epsilon(1e-6));
  CHECK(std::abs(kloosterman(1, 1, 7).value) <= 2.0 * std::sqrt(7.0));
  const auto r101 = weil_audit(101);
  CHECK(r101.max_ratio <= 1.0);
  // worst_a attains the ratio.
  CHECK(std::abs(kloosterman(1, r101.worst_a, 101).value) / (2.0 * std::sqrt(101.0)) == r101.max_ratio);
  CHECK_THROWS_AS((void)weil_audit(4), error);
}

TEST_CASE("weil_report JSON") {
  const auto r = weil_audit(13);
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j.at("p") == 13);
  CHECK(j.at("max_ratio").get<double>() == r.max_ratio);
  CHECK(j.at("worst_a") == r.worst_a);
  CHECK(to_json(r).rfind("{\"p\":13,\"max_ratio\":", 0) == 0);
}
