#include "bjorck/transform.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <thread>

#include <fmt/format.h>

#include "bjorck/error.hpp"
#include "bjorck/numtheory.hpp"

namespace bjorck {

namespace {

std::vector<cplx> make_twiddles(std::size_t m) {
  // exp(-2 pi i j / M) for j < M/2
  std::vector<cplx> w(m / 2);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double a = step * static_cast<double>(j);
    w[j] = {std::cos(a), -std::sin(a)};
  }
  return w;
}

void fft_with(std::span<cplx> data, std::span<const cplx> twiddle, bool inverse) {
  const std::size_t n = data.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  const std::size_t full = twiddle.size() * 2;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = full / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cplx w = twiddle[k * stride];
        if (inverse) w = std::conj(w);
        const cplx a = data[i + k];
        const cplx b = data[i + k + half] * w;
        data[i + k] = a + b;
        data[i + k + half] = a - b;
      }
    }
  }
}

}  // namespace

void fft_pow2(std::span<cplx> data, bool inverse) {
  if (data.empty() || !std::has_single_bit(data.size())) {
    throw error(errc::invalid_argument, "radix-2 FFT needs a power-of-two length");
  }
  if (data.size() == 1) return;
  const auto tw = make_twiddles(data.size());
  fft_with(data, tw, inverse);
}

std::vector<cplx> dft_naive(std::span<const cplx> v) {
  const std::size_t n = v.size();
  std::vector<cplx> out(n);
  if (n == 0) return out;
  std::vector<cplx> w(n);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = step * static_cast<double>(j);
    w[j] = {std::cos(a), -std::sin(a)};
  }
  for (std::size_t f = 0; f < n; ++f) {
    // Kahan summation on each component.
    double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx term = v[k] * w[idx];
      const double yr = term.real() - cre;
      const double tr = re + yr;
      cre = (tr - re) - yr;
      re = tr;
      const double yi = term.imag() - cim;
      const double ti = im + yi;
      cim = (ti - im) - yi;
      im = ti;
      idx += f;
      if (idx >= n) idx -= n;
    }
    out[f] = {re, im};
  }
  return out;
}

bluestein_plan::bluestein_plan(std::size_t n) : n_(n), m_(std::bit_ceil(2 * std::max<std::size_t>(n, 1) - 1)) {
  if (n == 0) throw error(errc::invalid_argument, "transform length must be positive");
  chirp_.resize(n);
  const auto two_n = static_cast<std::uint64_t>(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2N keeps the angle small and exact.
    const auto e = mulmod(k, k, two_n);
    const double a = std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
    chirp_[k] = {std::cos(a), -std::sin(a)};
  }
  twiddle_ = make_twiddles(m_);
  kernel_.assign(m_, cplx{});
  kernel_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    kernel_[k] = std::conj(chirp_[k]);
    kernel_[m_ - k] = std::conj(chirp_[k]);
  }
  if (m_ > 1) fft_with(kernel_, twiddle_, false);
}

void bluestein_plan::forward(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) {
    throw error(errc::invalid_argument, "bluestein_plan: length mismatch");
  }
  if (m_ == 1) {
    out[0] = in[0];
    return;
  }
  std::vector<cplx> work(m_, cplx{});
  for (std::size_t k = 0; k < n_; ++k) work[k] = in[k] * chirp_[k];
  fft_with(work, twiddle_, false);
  for (std::size_t j = 0; j < m_; ++j) work[j] *= kernel_[j];
  fft_with(work, twiddle_, true);
  const double scale = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < n_; ++k) out[k] = work[k] * chirp_[k] * scale;
}

std::vector<cplx> dft_bluestein(std::span<const cplx> v) {
  std::vector<cplx> out(v.size());
  if (v.empty()) return out;
  bluestein_plan(v.size()).forward(v, out);
  return out;
}

std::vector<cplx> dft(std::span<const cplx> v) {
  return v.size() < naive_dft_cutoff ? dft_naive(v) : dft_bluestein(v);
}

bool better(const ambiguity_max_result& a, const ambiguity_max_result& b) noexcept {
  if (a.max_abs != b.max_abs) return a.max_abs > b.max_abs;
  if (a.m != b.m) return a.m < b.m;
  return a.n < b.n;
}

ambiguity_engine::ambiguity_engine(const unimodular_sequence& u) : p_(u.p()), u_(u.values()) {
  if (static_cast<std::size_t>(p_) >= naive_dft_cutoff) plan_.emplace(static_cast<std::size_t>(p_));
}

void ambiguity_engine::row(std::int64_t m, std::span<cplx> out) const {
  if (m < 0 || m >= p_) {
    throw error(errc::out_of_domain, fmt::format("shift {} outside [0, {})", m, p_));
  }
  const auto n = static_cast<std::size_t>(p_);
  std::vector<cplx> lag(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t j = k + static_cast<std::size_t>(m);
    if (j >= n) j -= n;
    lag[k] = u_[j] * std::conj(u_[k]);
  }
  if (plan_) {
    plan_->forward(lag, out);
  } else {
    auto d = dft_naive(lag);
    std::copy(d.begin(), d.end(), out.begin());
  }
  const double inv = 1.0 / static_cast<double>(p_);
  for (auto& z : out) z *= inv;
}

ambiguity_row ambiguity_engine::row(std::int64_t m) const {
  ambiguity_row r{m, std::vector<cplx>(static_cast<std::size_t>(p_))};
  row(m, r.values);
  return r;
}

ambiguity_row compute_ambiguity_row(const unimodular_sequence& u, std::int64_t m) {
  return ambiguity_engine(u).row(m);
}

namespace {

void fold_row(std::int64_t m, std::span<const cplx> row, ambiguity_max_result& best) {
  for (std::size_t n = 0; n < row.size(); ++n) {
    if (m == 0 && n == 0) continue;
    const ambiguity_max_result cand{std::abs(row[n]), m, static_cast<std::int64_t>(n)};
    if (better(cand, best)) best = cand;
  }
}

}  // namespace

ambiguity_max_result ambiguity_max(const unimodular_sequence& u, unsigned jobs) {
  const ambiguity_engine engine(u);
  const std::int64_t p = u.p();
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(p));
  ambiguity_max_result init{-1.0, 0, 0};

  auto work = [&](std::atomic<std::int64_t>& next, ambiguity_max_result& best) {
    std::vector<cplx> row(static_cast<std::size_t>(p));
    for (std::int64_t m = next++; m < p; m = next++) {
      engine.row(m, row);
      fold_row(m, row, best);
    }
  };

  std::atomic<std::int64_t> next{0};
  std::vector<ambiguity_max_result> partial(jobs, init);
  if (jobs == 1) {
    work(next, partial[0]);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back([&, j] { work(next, partial[j]); });
  }
  ambiguity_max_result best = init;
  for (const auto& r : partial) {
    if (better(r, best)) best = r;
  }
  return best;
}

bool is_legendre_invariant(const unimodular_sequence& u) {
  const prime_context ctx(u.p());
  const cplx on_residue = u[1];
  const cplx on_nonresidue = u[static_cast<std::size_t>(ctx.least_nonresidue())];
  for (std::int64_t k = 1; k < u.p(); ++k) {
    const cplx want = ctx.chi(k) > 0 ? on_residue : on_nonresidue;
    if (u[static_cast<std::size_t>(k)] != want) return false;
  }
  return true;
}

ambiguity_max_result ambiguity_max_orbit(const unimodular_sequence& u) {
  if (!is_legendre_invariant(u)) {
    throw error(errc::invalid_argument, "orbit reduction needs a Legendre-invariant sequence");
  }
  const prime_context ctx(u.p());
  const std::int64_t p = u.p();
  const ambiguity_engine engine(u);
  ambiguity_max_result best{-1.0, 0, 0};
  std::vector<cplx> row(static_cast<std::size_t>(p));
  for (std::int64_t m : {std::int64_t{0}, std::int64_t{1}, ctx.least_nonresidue()}) {
    engine.row(m, row);
    fold_row(m, row, best);
  }
  // Canonical representative of the orbit {(q m, q^-1 n) : q in Q}.
  const std::int64_t m0 = best.m;
  const std::int64_t n0 = best.n;
  for (std::int64_t q = 1; q < p; ++q) {
    if (ctx.chi(q) <= 0) continue;
    const auto m = static_cast<std::int64_t>(mulmod(q, m0, p));
    const auto n = static_cast<std::int64_t>(mulmod(ctx.inverse(q), n0, p));
    if (m < best.m || (m == best.m && n < best.n)) {
      best.m = m;
      best.n = n;
    }
  }
  return best;
}

ambiguity_table compute_ambiguity_table(const unimodular_sequence& u, std::int64_t cap) {
  const std::int64_t p = u.p();
  if (p > cap) {
    throw error(errc::table_too_large, fmt::format("p = {} exceeds the table cap {}", p, cap));
  }
  const ambiguity_engine engine(u);
  std::vector<cplx> data(static_cast<std::size_t>(p * p));
  for (std::int64_t m = 0; m < p; ++m) {
    engine.row(m, std::span<cplx>(data).subspan(static_cast<std::size_t>(m * p), static_cast<std::size_t>(p)));
  }
  return ambiguity_table(p, std::move(data));
}

std::string to_csv(const ambiguity_table& table) {
  std::string out = "m,n,re,im,abs\n";
  const std::int64_t p = table.p();
  for (std::int64_t m = 0; m < p; ++m) {
    for (std::int64_t n = 0; n < p; ++n) {
      const cplx z = table(m, n);
      fmt::format_to(std::back_inserter(out), "{},{},{:.17g},{:.17g},{:.17g}\n", m, n, z.real(),
                     z.imag(), std::abs(z));
    }
  }
  return out;
}

}  // namespace bjorck
