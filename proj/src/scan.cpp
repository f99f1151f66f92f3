#include "bjorck/scan.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "bjorck/decomposition.hpp"
#include "bjorck/error.hpp"
#include "bjorck/sequences.hpp"
#include "bjorck/transform.hpp"
#include "json.hpp"

namespace bjorck {

namespace {

constexpr double near_tie_window = 1e-9;

constexpr std::array<std::int64_t, 60> table_primes{
    3,    5,    7,    11,   13,   17,   19,   23,   29,   101,  103,  107,  109,  113,  127,
    131,  137,  139,  149,  151,  157,  163,  167,  173,  179,  181,  191,  193,  197,  199,
    1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049, 1051, 1061, 1063, 1069, 1087, 1091, 1093,
    1097, 1103, 1109, 1117, 1123, 1129, 1151, 1153, 1163, 1171, 1181, 1187, 1193, 1201, 1213};

std::string real(double v, bool full) {
  return full ? fmt::format("{:.17g}", v) : fmt::format("{:.6f}", v);
}

}  // namespace

std::span<const std::int64_t> default_table_primes() noexcept { return table_primes; }

scan_record scan_prime(std::int64_t p, scan_method method) {
  const auto start = std::chrono::steady_clock::now();
  const unimodular_sequence u = bjorck_sequence(p);
  const ambiguity_max_result mx = method == scan_method::orbit ? ambiguity_max_orbit(u) : ambiguity_max(u);
  const double pd = static_cast<double>(p);

  scan_record r;
  r.p = p;
  r.cls = p % 4 == 1 ? residue_class::one_mod_4 : residue_class::three_mod_4;
  r.max_ambiguity = mx.max_abs;
  r.argmax_m = mx.m;
  r.argmax_n = mx.n;
  r.two_over_sqrt_p = 2.0 / std::sqrt(pd);
  r.mbound = mbound(p);
  r.exceeds_two_over_sqrt_p = r.max_ambiguity > r.two_over_sqrt_p;
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!(r.max_ambiguity < r.mbound)) {
    throw error(errc::invariant_violation,
                fmt::format("p = {}: max {:.17g} is not below the bound {:.17g}", p, r.max_ambiguity, r.mbound));
  }
  const double lower = 1.0 / std::sqrt(pd - 1.0);
  if (r.max_ambiguity < lower) {
    throw error(errc::invariant_violation,
                fmt::format("p = {}: max {:.17g} is below 1/sqrt(p-1) = {:.17g}", p, r.max_ambiguity, lower));
  }
  return r;
}

std::vector<std::int64_t> primes_in(std::int64_t lo, std::int64_t hi, std::optional<residue_class> only) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = std::max<std::int64_t>(lo, 3); n <= hi; ++n) {
    if (!is_prime(static_cast<std::uint64_t>(n))) continue;
    const auto cls = n % 4 == 1 ? residue_class::one_mod_4 : residue_class::three_mod_4;
    if (only && *only != cls) continue;
    out.push_back(n);
  }
  return out;
}

std::vector<scan_record> scan_primes(std::span<const std::int64_t> primes, const scan_options& opts) {
  for (auto p : primes) {
    require_odd_prime(p);
    if (opts.cap > 0 && p > opts.cap) {
      throw error(errc::invalid_range,
                  fmt::format("p = {} exceeds the scan cap {}; lift the cap to scan further", p, opts.cap));
    }
  }
  // Largest first: per-prime cost grows quickly with p.
  std::vector<std::size_t> order(primes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return primes[a] > primes[b]; });

  std::vector<scan_record> records(primes.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < order.size(); i = next++) {
      try {
        records[order[i]] = scan_prime(primes[order[i]], opts.method);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = order.size();
      }
    }
  };
  const unsigned jobs = std::clamp<unsigned>(opts.jobs, 1, static_cast<unsigned>(std::max<std::size_t>(order.size(), 1)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.p < b.p; });
  for (const auto& r : records) {
    if (std::abs(r.max_ambiguity - r.two_over_sqrt_p) < near_tie_window) {
      const auto msg = fmt::format("warning: p = {} max {:.17g} is within {:g} of 2/sqrt(p)", r.p,
                                   r.max_ambiguity, near_tie_window);
      if (opts.warn) {
        opts.warn(msg);
      } else {
        std::cerr << msg << '\n';
      }
    }
  }
  return records;
}

std::vector<scan_record> scan_range(std::int64_t lo, std::int64_t hi, const scan_options& opts) {
  if (lo < 3 || hi < lo) {
    throw error(errc::invalid_range, fmt::format("invalid range {}:{} (need 3 <= lo <= hi)", lo, hi));
  }
  const auto primes = primes_in(lo, hi, opts.only);
  return scan_primes(primes, opts);
}

std::vector<std::int64_t> find_exceedances(std::span<const scan_record> records,
                                           std::optional<residue_class> only) {
  std::vector<std::int64_t> out;
  for (const auto& r : records) {
    if (only && r.cls != *only) continue;
    if (r.exceeds_two_over_sqrt_p) out.push_back(r.p);
  }
  return out;
}

std::string to_csv(std::span<const scan_record> records, bool full_precision) {
  std::string out = "p,class,max_ambiguity,argmax_m,argmax_n,two_over_sqrt_p,mbound,exceeds\n";
  for (const auto& r : records) {
    fmt::format_to(std::back_inserter(out), "{},{},{},{},{},{},{},{}\n", r.p, to_string(r.cls),
                   real(r.max_ambiguity, full_precision), r.argmax_m, r.argmax_n,
                   real(r.two_over_sqrt_p, full_precision), real(r.mbound, full_precision),
                   r.exceeds_two_over_sqrt_p ? "true" : "false");
  }
  return out;
}

std::string to_jsonl(std::span<const scan_record> records, bool include_timing) {
  std::string out;
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["class"] = to_string(r.cls);
    j["max_ambiguity"] = r.max_ambiguity;
    j["argmax_m"] = r.argmax_m;
    j["argmax_n"] = r.argmax_n;
    j["two_over_sqrt_p"] = r.two_over_sqrt_p;
    j["mbound"] = r.mbound;
    j["exceeds"] = r.exceeds_two_over_sqrt_p;
    if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string figure_csv(std::span<const scan_record> records, bool full_precision) {
  std::string out = "p,max_ambiguity,two_over_sqrt_p,two_over_sqrt_p_plus_4_over_p\n";
  for (const auto& r : records) {
    const double envelope = r.two_over_sqrt_p + 4.0 / static_cast<double>(r.p);
    fmt::format_to(std::back_inserter(out), "{},{},{},{}\n", r.p, real(r.max_ambiguity, full_precision),
                   real(r.two_over_sqrt_p, full_precision), real(envelope, full_precision));
  }
  return out;
}

std::string table_csv(std::span<const scan_record> records, bool full_precision) {
  std::string out = "p,max_ambiguity,two_over_sqrt_p\n";
  for (const auto& r : records) {
    fmt::format_to(std::back_inserter(out), "{},{},{}\n", r.p, real(r.max_ambiguity, full_precision),
                   real(r.two_over_sqrt_p, full_precision));
  }
  return out;
}

}  // namespace bjorck
