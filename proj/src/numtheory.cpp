#include "bjorck/numtheory.hpp"

#include <array>
#include <string>

#include "bjorck/error.hpp"

namespace bjorck {

const char* to_string(residue_class c) noexcept {
  return c == residue_class::one_mod_4 ? "1mod4" : "3mod4";
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  // The first twelve primes as witnesses decide every n < 3.3e24.
  static constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto w : witnesses) {
    if (n % w == 0) return n == w;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto w : witnesses) {
    std::uint64_t x = powmod(w, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::int64_t mod(std::int64_t k, std::int64_t p) noexcept {
  std::int64_t r = k % p;
  return r < 0 ? r + p : r;
}

void require_odd_prime(std::int64_t p) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw error(errc::invalid_prime, std::to_string(p) + " is not an odd prime");
  }
}

int legendre(std::int64_t k, std::int64_t p) {
  require_odd_prime(p);
  const auto up = static_cast<std::uint64_t>(p);
  const auto r = static_cast<std::uint64_t>(mod(k, p));
  if (r == 0) return 0;
  return powmod(r, (up - 1) / 2, up) == 1 ? 1 : -1;
}

std::int64_t mod_inverse(std::int64_t x, std::int64_t p) {
  require_odd_prime(p);
  const std::int64_t r = mod(x, p);
  if (r == 0) {
    throw error(errc::division_by_zero,
                std::to_string(x) + " has no inverse mod " + std::to_string(p));
  }
  // Fermat: x^(p-2).
  const auto up = static_cast<std::uint64_t>(p);
  return static_cast<std::int64_t>(powmod(static_cast<std::uint64_t>(r), up - 2, up));
}

std::vector<std::int64_t> quadratic_residues(std::int64_t p) {
  require_odd_prime(p);
  std::vector<bool> seen(static_cast<std::size_t>(p), false);
  for (std::int64_t k = 1; k <= (p - 1) / 2; ++k) {
    seen[static_cast<std::size_t>(mulmod(k, k, p))] = true;
  }
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>((p - 1) / 2));
  for (std::int64_t k = 1; k < p; ++k) {
    if (seen[static_cast<std::size_t>(k)]) out.push_back(k);
  }
  return out;
}

prime_context::prime_context(std::int64_t p) : p_(p) {
  require_odd_prime(p);
  cls_ = p % 4 == 1 ? residue_class::one_mod_4 : residue_class::three_mod_4;

  const auto n = static_cast<std::size_t>(p);
  const auto up = static_cast<std::uint64_t>(p);
  legendre_.resize(n);
  legendre_[0] = 0;
  for (std::size_t k = 1; k < n; ++k) {
    legendre_[k] = powmod(k, (up - 1) / 2, up) == 1 ? 1 : -1;
    if (least_nonresidue_ == 0 && legendre_[k] < 0) least_nonresidue_ = static_cast<std::int64_t>(k);
  }

  // inv[k] = -(p / k) * inv[p mod k]  (mod p)
  inverse_.assign(n, 0);
  inverse_[1] = 1;
  for (std::size_t k = 2; k < n; ++k) {
    inverse_[k] = mod(-(p / static_cast<std::int64_t>(k)) * inverse_[n % k], p);
  }
}

std::int64_t prime_context::inverse(std::int64_t k) const {
  const std::int64_t r = mod(k, p_);
  if (r == 0) {
    throw error(errc::division_by_zero,
                std::to_string(k) + " has no inverse mod " + std::to_string(p_));
  }
  return inverse_[static_cast<std::size_t>(r)];
}

}  // namespace bjorck
