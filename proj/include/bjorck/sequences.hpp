#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bjorck {

using cplx = std::complex<double>;

inline constexpr double default_tolerance = 1e-9;

/// Length-p vector of unit-modulus samples.
///
/// The length is always an odd prime. Construction from arbitrary samples
/// rejects anything further than 1e-12 from the unit circle.
class unimodular_sequence {
 public:
  unimodular_sequence(std::vector<cplx> values, std::string label = "custom");

  std::int64_t p() const noexcept { return static_cast<std::int64_t>(values_.size()); }
  const std::vector<cplx>& values() const noexcept { return values_; }
  std::span<const cplx> span() const noexcept { return values_; }
  const cplx& operator[](std::size_t k) const noexcept { return values_[k]; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::vector<cplx> values_;
  std::string label_;
};

struct bjorck_angles {
  double theta;  // arccos(1/(1+sqrt p)), used when p = 1 mod 4
  double phi;    // arccos((1-p)/(1+p)), used when p = 3 mod 4
  cplx eta;
  cplx xi;
};

bjorck_angles angles(std::int64_t p);

unimodular_sequence bjorck_sequence(std::int64_t p);

// u[k] = exp(2 pi i (r k^2 + s k) / p)
unimodular_sequence chirp(std::int64_t p, std::int64_t r, std::int64_t s);

// C(u)[m] = (1/p) sum_k u[m+k] conj(u[k])
std::vector<cplx> autocorrelation(const unimodular_sequence& u);

struct cazac_report {
  bool ca_ok;
  bool zac_ok;
  double max_violation;
};

cazac_report verify_cazac(const unimodular_sequence& u, double tol = default_tolerance);

bool verify_biunimodular(const unimodular_sequence& u, double tol = default_tolerance);

// One "re,im" line per sample, 17 significant digits.
std::string serialize(const unimodular_sequence& u);
unimodular_sequence parse_sequence(const std::string& text, std::string label = "custom");

}  // namespace bjorck
