#pragma once

#include <cstdint>
#include <vector>

namespace bjorck {

enum class residue_class { one_mod_4, three_mod_4 };

const char* to_string(residue_class c) noexcept;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

// Deterministic for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

// Reduces k into [0, p).
std::int64_t mod(std::int64_t k, std::int64_t p) noexcept;

// Throws errc::invalid_prime unless p is an odd prime.
void require_odd_prime(std::int64_t p);

// Euler's criterion: k^((p-1)/2) mod p.
int legendre(std::int64_t k, std::int64_t p);

std::int64_t mod_inverse(std::int64_t x, std::int64_t p);

// Nonzero squares mod p, ascending.
std::vector<std::int64_t> quadratic_residues(std::int64_t p);

/// Validated odd prime with its Legendre table.
///
/// Immutable after construction. Lookups are O(1), so inner loops over
/// Z/pZ should go through a context rather than the free functions.
class prime_context {
 public:
  explicit prime_context(std::int64_t p);

  std::int64_t p() const noexcept { return p_; }
  residue_class cls() const noexcept { return cls_; }

  // chi(k) for any integer k.
  int chi(std::int64_t k) const noexcept { return legendre_[static_cast<std::size_t>(mod(k, p_))]; }

  const std::vector<std::int8_t>& legendre_table() const noexcept { return legendre_; }

  // Multiplicative inverse from the precomputed table; throws on k = 0 mod p.
  std::int64_t inverse(std::int64_t k) const;

  // Smallest quadratic nonresidue.
  std::int64_t least_nonresidue() const noexcept { return least_nonresidue_; }

 private:
  std::int64_t p_;
  residue_class cls_;
  std::vector<std::int8_t> legendre_;
  std::vector<std::int64_t> inverse_;
  std::int64_t least_nonresidue_ = 0;
};

}  // namespace bjorck
