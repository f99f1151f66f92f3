#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bjorck/sequences.hpp"

namespace bjorck {

// Lengths below this use the direct sum in dft().
inline constexpr std::size_t naive_dft_cutoff = 64;
inline constexpr std::int64_t default_table_cap = 2048;

// out[n] = sum_k v[k] exp(-2 pi i k n / N)
std::vector<cplx> dft(std::span<const cplx> v);

// Direct O(N^2) sum with compensated accumulation; the correctness oracle.
std::vector<cplx> dft_naive(std::span<const cplx> v);

// Chirp-z path regardless of length.
std::vector<cplx> dft_bluestein(std::span<const cplx> v);

// In-place radix-2 transform; data.size() must be a power of two.
void fft_pow2(std::span<cplx> data, bool inverse);

/// Bluestein chirp-z plan for one length.
///
/// Holds the chirp and the transformed convolution kernel, so repeated
/// transforms of the same length (one per ambiguity row) pay for them once.
/// const methods are safe to call concurrently.
class bluestein_plan {
 public:
  explicit bluestein_plan(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t padded_size() const noexcept { return m_; }

  void forward(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<cplx> chirp_;   // exp(-i pi k^2 / N)
  std::vector<cplx> kernel_;  // FFT of the conjugate chirp, wrapped to length M
  std::vector<cplx> twiddle_;
};

struct ambiguity_row {
  std::int64_t m;
  std::vector<cplx> values;  // values[n] = A_p(u)[m, n]
};

struct ambiguity_max_result {
  double max_abs = 0.0;
  std::int64_t m = 0;
  std::int64_t n = 0;
};

// Deterministic reduction order: larger value wins, then smaller m, then smaller n.
bool better(const ambiguity_max_result& a, const ambiguity_max_result& b) noexcept;

/// Row-at-a-time evaluator of A_p(u)[m, n] for a fixed sequence.
class ambiguity_engine {
 public:
  explicit ambiguity_engine(const unimodular_sequence& u);

  std::int64_t p() const noexcept { return p_; }

  // Writes A_p(u)[m, .] into out (length p).
  void row(std::int64_t m, std::span<cplx> out) const;
  ambiguity_row row(std::int64_t m) const;

 private:
  std::int64_t p_;
  std::vector<cplx> u_;
  std::optional<bluestein_plan> plan_;  // unset below the naive cutoff
};

ambiguity_row compute_ambiguity_row(const unimodular_sequence& u, std::int64_t m);

// Max of |A_p(u)[m, n]| over (m, n) != (0, 0). Streams all p rows without
// keeping the table; rows may be split across `jobs` threads.
ambiguity_max_result ambiguity_max(const unimodular_sequence& u, unsigned jobs = 1);

// True when u[q k] = u[k] for every quadratic residue q, i.e. u is a function
// of the Legendre symbol. Björck sequences are.
bool is_legendre_invariant(const unimodular_sequence& u);

// Same maximum as ambiguity_max for Legendre-invariant sequences, using only
// rows 0, 1 and the least nonresidue: A[q m, n] = A[m, q n] for residues q,
// so every other row is a permutation of one of these. The argmax is the
// smallest (m, n) in the orbit {(q m, n / q)} of the maximizer found.
// Throws errc::invalid_argument when u is not Legendre-invariant.
ambiguity_max_result ambiguity_max_orbit(const unimodular_sequence& u);

class ambiguity_table {
 public:
  ambiguity_table(std::int64_t p, std::vector<cplx> data) : p_(p), data_(std::move(data)) {}

  std::int64_t p() const noexcept { return p_; }
  const cplx& operator()(std::int64_t m, std::int64_t n) const noexcept {
    return data_[static_cast<std::size_t>(m * p_ + n)];
  }
  std::span<const cplx> row(std::int64_t m) const noexcept {
    return std::span<const cplx>(data_).subspan(static_cast<std::size_t>(m * p_),
                                                static_cast<std::size_t>(p_));
  }

 private:
  std::int64_t p_;
  std::vector<cplx> data_;
};

// Full p x p table; throws errc::table_too_large above `cap`.
ambiguity_table compute_ambiguity_table(const unimodular_sequence& u,
                                        std::int64_t cap = default_table_cap);

// Header "m,n,re,im,abs", row-major, 17 significant digits.
std::string to_csv(const ambiguity_table& table);

}  // namespace bjorck
