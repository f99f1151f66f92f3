#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bjorck/numtheory.hpp"

namespace bjorck {

enum class scan_method {
  full,   // every row of the ambiguity function
  orbit,  // rows 0, 1 and the least nonresidue only
};

inline constexpr std::int64_t default_scan_cap = 5000;

struct scan_options {
  unsigned jobs = 1;
  std::optional<residue_class> only;  // residue-class filter; unset = all
  scan_method method = scan_method::orbit;
  // Largest prime accepted; 0 lifts the cap.
  std::int64_t cap = default_scan_cap;
  // Receives near-tie warnings. Defaults to stderr when empty.
  std::function<void(const std::string&)> warn;
};

struct scan_record {
  std::int64_t p = 0;
  residue_class cls = residue_class::one_mod_4;
  double max_ambiguity = 0.0;
  std::int64_t argmax_m = 0;
  std::int64_t argmax_n = 0;
  double two_over_sqrt_p = 0.0;
  double mbound = 0.0;
  bool exceeds_two_over_sqrt_p = false;
  double elapsed_ms = 0.0;
};

// Björck record for one prime. Throws errc::invariant_violation if the
// measured max reaches mbound(p) or drops below 1/sqrt(p-1).
scan_record scan_prime(std::int64_t p, scan_method method = scan_method::orbit);

std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi,
                                    std::optional<residue_class> only = std::nullopt);

// One record per listed prime, ascending by p whatever the worker count.
std::vector<scan_record> scan_primes(std::span<const std::int64_t> primes, const scan_options& opts = {});

std::vector<scan_record> scan_range(std::int64_t lo, std::int64_t hi, const scan_options& opts = {});

std::vector<std::int64_t> find_exceedances(std::span<const scan_record> records,
                                           std::optional<residue_class> only = std::nullopt);

// Header "p,class,max_ambiguity,argmax_m,argmax_n,two_over_sqrt_p,mbound,exceeds";
// reals with 6 decimals unless full_precision.
std::string to_csv(std::span<const scan_record> records, bool full_precision = false);

// One JSON object per line at full precision. elapsed_ms is wall-clock and
// only emitted on request so that the default output is reproducible.
std::string to_jsonl(std::span<const scan_record> records, bool include_timing = false);

// Columns p,max_ambiguity,two_over_sqrt_p,two_over_sqrt_p_plus_4_over_p.
std::string figure_csv(std::span<const scan_record> records, bool full_precision = false);

// Primes used by the `table` subcommand when none are given.
std::span<const std::int64_t> default_table_primes() noexcept;

// Columns p,max_ambiguity,two_over_sqrt_p.
std::string table_csv(std::span<const scan_record> records, bool full_precision = false);

}  // namespace bjorck
