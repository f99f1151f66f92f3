#include "bjorck/sequences.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "bjorck/error.hpp"
#include "bjorck/numtheory.hpp"
#include "bjorck/roots.hpp"
#include "bjorck/transform.hpp"

namespace bjorck {

namespace {

constexpr double unit_modulus_tolerance = 1e-12;

}  // namespace

unimodular_sequence::unimodular_sequence(std::vector<cplx> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
  require_odd_prime(static_cast<std::int64_t>(values_.size()));
  for (std::size_t k = 0; k < values_.size(); ++k) {
    const double dev = std::abs(std::abs(values_[k]) - 1.0);
    if (!(dev <= unit_modulus_tolerance)) {
      throw error(errc::invalid_argument,
                  fmt::format("sample {} has modulus {:.17g}, expected 1", k, std::abs(values_[k])));
    }
  }
}

bjorck_angles angles(std::int64_t p) {
  require_odd_prime(p);
  const double pd = static_cast<double>(p);
  bjorck_angles a{};
  a.theta = std::acos(1.0 / (1.0 + std::sqrt(pd)));
  a.phi = std::acos((1.0 - pd) / (1.0 + pd));
  a.eta = std::polar(1.0, a.theta);
  a.xi = std::polar(1.0, a.phi);
  return a;
}

unimodular_sequence bjorck_sequence(std::int64_t p) {
  const prime_context ctx(p);
  const bjorck_angles a = angles(p);
  std::vector<cplx> v(static_cast<std::size_t>(p));
  if (ctx.cls() == residue_class::one_mod_4) {
    // exp(i theta chi(k)): 1 at k = 0, eta on residues, conj(eta) on nonresidues.
    const cplx lo = std::conj(a.eta);
    for (std::int64_t k = 0; k < p; ++k) {
      const int c = ctx.chi(k);
      v[static_cast<std::size_t>(k)] = c == 0 ? cplx{1.0, 0.0} : (c > 0 ? a.eta : lo);
    }
  } else {
    for (std::int64_t k = 0; k < p; ++k) {
      v[static_cast<std::size_t>(k)] = ctx.chi(k) < 0 ? a.xi : cplx{1.0, 0.0};
    }
  }
  return unimodular_sequence(std::move(v), "bjorck");
}

unimodular_sequence chirp(std::int64_t p, std::int64_t r, std::int64_t s) {
  require_odd_prime(p);
  if (mod(r, p) == 0) {
    throw error(errc::degenerate_chirp,
                fmt::format("chirp rate {} is divisible by p = {}", r, p));
  }
  const unit_roots zeta(p);
  const std::int64_t rr = mod(r, p);
  const std::int64_t ss = mod(s, p);
  std::vector<cplx> v(static_cast<std::size_t>(p));
  for (std::int64_t k = 0; k < p; ++k) {
    const auto e = (mulmod(mulmod(k, k, p), rr, p) + mulmod(k, ss, p)) % static_cast<std::uint64_t>(p);
    v[static_cast<std::size_t>(k)] = zeta(static_cast<std::int64_t>(e));
  }
  return unimodular_sequence(std::move(v), fmt::format("chirp({},{})", r, s));
}

std::vector<cplx> autocorrelation(const unimodular_sequence& u) {
  const auto n = static_cast<std::size_t>(u.p());
  const auto& v = u.values();
  std::vector<cplx> c(n);
  for (std::size_t m = 0; m < n; ++m) {
    cplx acc{};
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t j = m + k;
      if (j >= n) j -= n;
      acc += v[j] * std::conj(v[k]);
    }
    c[m] = acc / static_cast<double>(n);
  }
  return c;
}

cazac_report verify_cazac(const unimodular_sequence& u, double tol) {
  if (!(tol > 0)) throw error(errc::invalid_argument, "tolerance must be positive");
  double ca = 0.0;
  for (const auto& z : u.values()) ca = std::max(ca, std::abs(std::abs(z) - 1.0));
  const auto c = autocorrelation(u);
  double zac = 0.0;
  for (std::size_t m = 1; m < c.size(); ++m) zac = std::max(zac, std::abs(c[m]));
  return {ca <= tol, zac <= tol, std::max(ca, zac)};
}

bool verify_biunimodular(const unimodular_sequence& u, double tol) {
  if (!(tol > 0)) throw error(errc::invalid_argument, "tolerance must be positive");
  const double target = std::sqrt(static_cast<double>(u.p()));
  for (const auto& z : dft(u.span())) {
    if (std::abs(std::abs(z) - target) > tol) return false;
  }
  return true;
}

std::string serialize(const unimodular_sequence& u) {
  std::string out;
  for (const auto& z : u.values()) {
    fmt::format_to(std::back_inserter(out), "{:.17g},{:.17g}\n", z.real(), z.imag());
  }
  return out;
}

unimodular_sequence parse_sequence(const std::string& text, std::string label) {
  std::vector<cplx> v;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    double re = 0.0;
    double im = 0.0;
    const char* b = line.data();
    const char* e = b + line.size();
    bool ok = comma != std::string::npos;
    if (ok) {
      auto r1 = std::from_chars(b, b + comma, re);
      auto r2 = std::from_chars(b + comma + 1, e, im);
      ok = r1.ec == std::errc{} && r1.ptr == b + comma && r2.ec == std::errc{} && r2.ptr == e;
    }
    if (!ok) throw error(errc::invalid_argument, fmt::format("line {}: expected \"re,im\"", lineno));
    v.emplace_back(re, im);
  }
  return unimodular_sequence(std::move(v), std::move(label));
}

}  // namespace bjorck
