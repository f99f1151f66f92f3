#include "bjorck/expsums.hpp"

#include <cmath>

#include <fmt/format.h>
#include "json.hpp"

#include "bjorck/error.hpp"

namespace bjorck {

namespace {

void require_unit(const prime_context& ctx, std::int64_t a, const char* what) {
  if (mod(a, ctx.p()) == 0) {
    throw error(errc::invalid_argument,
                fmt::format("{}: a = {} must not be divisible by p = {}", what, a, ctx.p()));
  }
}

}  // namespace

kloosterman_value sum_context::kloosterman(std::int64_t a, std::int64_t b) const {
  const std::int64_t p = this->p();
  const std::int64_t ar = mod(a, p);
  const std::int64_t br = mod(b, p);
  std::complex<double> acc{};
  for (std::int64_t x = 1; x < p; ++x) {
    const auto e = (mulmod(ar, x, p) + mulmod(br, primes_.inverse(x), p)) % static_cast<std::uint64_t>(p);
    acc += zeta_(static_cast<std::int64_t>(e));
  }
  if (std::abs(acc.imag()) >= kloosterman_imag_tolerance) {
    throw error(errc::invariant_violation,
                fmt::format("K[{},{};{}] has imaginary part {:.3e}", a, b, p, acc.imag()));
  }
  return {a, b, p, acc.real()};
}

std::complex<double> sum_context::gauss_sum(std::int64_t a) const {
  const std::int64_t p = this->p();
  const std::int64_t ar = mod(a, p);
  std::complex<double> acc{};
  for (std::int64_t k = 1; k < p; ++k) {
    acc += static_cast<double>(primes_.chi(k)) * zeta_(static_cast<std::int64_t>(mulmod(ar, k, p)));
  }
  return acc;
}

double sum_context::salie_form(std::int64_t a) const {
  require_unit(primes_, a, "salie_form");
  const std::int64_t p = this->p();
  const std::int64_t four_a = mod(4 * mod(a, p), p);
  std::complex<double> acc{};
  for (std::int64_t x = 0; x < p; ++x) {
    const int c = primes_.chi(static_cast<std::int64_t>(mulmod(x, x, p)) - four_a);
    if (c != 0) acc += static_cast<double>(c) * zeta_(x);
  }
  return acc.real();
}

std::int64_t sum_context::jacobsthal_count(std::int64_t t, std::int64_t a) const {
  require_unit(primes_, a, "jacobsthal_count");
  const std::int64_t p = this->p();
  const std::int64_t tr = mod(t, p);
  const std::int64_t ar = mod(a, p);
  std::int64_t count = 0;
  for (std::int64_t x = 1; x < p; ++x) {
    if ((x + static_cast<std::int64_t>(mulmod(ar, primes_.inverse(x), p))) % p == tr) ++count;
  }
  return count;
}

kloosterman_value kloosterman(std::int64_t a, std::int64_t b, std::int64_t p) {
  return sum_context(p).kloosterman(a, b);
}

std::complex<double> gauss_sum(std::int64_t a, std::int64_t p) {
  return sum_context(p).gauss_sum(a);
}

std::complex<double> gauss_sum_closed_form(std::int64_t a, std::int64_t p) {
  const int c = legendre(a, p);
  const double magnitude = c * std::sqrt(static_cast<double>(p));
  return p % 4 == 1 ? std::complex<double>{magnitude, 0.0} : std::complex<double>{0.0, magnitude};
}

double salie_form(std::int64_t a, std::int64_t p) { return sum_context(p).salie_form(a); }

std::int64_t jacobsthal_count(std::int64_t t, std::int64_t a, std::int64_t p) {
  return sum_context(p).jacobsthal_count(t, a);
}

std::complex<double> char_ambiguity(const sum_context& ctx, std::int64_t m, std::int64_t n,
                                    char_method method) {
  const std::int64_t p = ctx.p();
  const std::int64_t mr = mod(m, p);
  const std::int64_t nr = mod(n, p);
  if (mr == 0 || nr == 0) {
    throw error(errc::out_of_domain,
                fmt::format("A_p(chi)[{},{}] needs both indices nonzero mod {}", m, n, p));
  }
  const double inv_p = 1.0 / static_cast<double>(p);

  if (method == char_method::direct) {
    std::complex<double> acc{};
    for (std::int64_t k = 1; k < p; ++k) {
      const int c = ctx.chi(k + mr) * ctx.chi(k);
      if (c != 0) acc += static_cast<double>(c) * ctx.zeta(-static_cast<std::int64_t>(mulmod(k, nr, p)));
    }
    return acc * inv_p;
  }

  // Substituting k = c x - b with a = (mn)^2/16, b = m/2, c = -1/n turns the
  // sum into zeta^(b n) K[1, a; p] / p.
  const auto& pc = ctx.primes();
  const auto up = static_cast<std::uint64_t>(p);
  const auto mn = mulmod(mr, nr, up);
  const auto a = mulmod(mulmod(mn, mn, up), pc.inverse(16), up);
  const auto b = mulmod(mr, pc.inverse(2), up);
  const auto bn = mulmod(b, nr, up);
  const double k = ctx.kloosterman(1, static_cast<std::int64_t>(a)).value;
  return ctx.zeta(static_cast<std::int64_t>(bn)) * (k * inv_p);
}

std::complex<double> char_ambiguity(std::int64_t p, std::int64_t m, std::int64_t n,
                                    char_method method) {
  return char_ambiguity(sum_context(p), m, n, method);
}

weil_report weil_audit(std::int64_t p) {
  const sum_context ctx(p);
  const double scale = 2.0 * std::sqrt(static_cast<double>(p));
  weil_report r{p, -1.0, 0};
  for (std::int64_t a = 1; a < p; ++a) {
    const double ratio = std::abs(ctx.kloosterman(1, a).value) / scale;
    if (ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.worst_a = a;
    }
  }
  return r;
}

std::string to_json(const weil_report& r) {
  nlohmann::ordered_json j;
  j["p"] = r.p;
  j["max_ratio"] = r.max_ratio;
  j["worst_a"] = r.worst_a;
  return j.dump();
}

}  // namespace bjorck
