#include "bjorck/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "bjorck/decomposition.hpp"
#include "bjorck/error.hpp"
#include "bjorck/expsums.hpp"
#include "bjorck/scan.hpp"
#include "bjorck/sequences.hpp"
#include "bjorck/transform.hpp"
#include "json.hpp"

namespace bjorck::cli {

namespace {

struct sequence_flags {
  std::int64_t p = 0;
  std::string kind = "bjorck";
  std::int64_t r = 1;
  std::int64_t s = 0;
  std::string in;
};

void add_sequence_flags(CLI::App* cmd, sequence_flags& f, bool allow_file) {
  cmd->add_option("--p", f.p, "Odd prime length");
  cmd->add_option("--kind", f.kind, "Sequence family")
      ->check(CLI::IsMember({"bjorck", "chirp"}))
      ->capture_default_str();
  cmd->add_option("--r", f.r, "Chirp rate (kind=chirp)")->capture_default_str();
  cmd->add_option("--s", f.s, "Chirp offset (kind=chirp)")->capture_default_str();
  if (allow_file) cmd->add_option("--in", f.in, "Read samples (re,im per line) from FILE");
}

unimodular_sequence build_sequence(const sequence_flags& f) {
  if (!f.in.empty()) {
    std::ifstream file(f.in);
    if (!file) throw error(errc::invalid_argument, "cannot open " + f.in);
    std::stringstream buf;
    buf << file.rdbuf();
    return parse_sequence(buf.str(), "custom");
  }
  if (f.p == 0) throw error(errc::invalid_argument, "--p is required");
  return f.kind == "chirp" ? chirp(f.p, f.r, f.s) : bjorck_sequence(f.p);
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool good = colon != std::string::npos;
  if (good) {
    const char* b = text.data();
    const char* e = b + text.size();
    auto r1 = std::from_chars(b, b + colon, lo);
    auto r2 = std::from_chars(b + colon + 1, e, hi);
    good = r1.ec == std::errc{} && r1.ptr == b + colon && r2.ec == std::errc{} && r2.ptr == e;
  }
  if (!good) throw error(errc::invalid_range, fmt::format("malformed range \"{}\" (expected LO:HI)", text));
  if (lo < 3 || hi < lo) throw error(errc::invalid_range, fmt::format("invalid range {} (need 3 <= LO <= HI)", text));
  return {lo, hi};
}

std::optional<residue_class> parse_class(const std::string& c) {
  if (c == "1mod4") return residue_class::one_mod_4;
  if (c == "3mod4") return residue_class::three_mod_4;
  return std::nullopt;
}

scan_method parse_method(const std::string& m) { return m == "full" ? scan_method::full : scan_method::orbit; }

// Writes to a sibling temp file, then renames over the target.
void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += fmt::format(".tmp{}", std::random_device{}());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw error(errc::invalid_argument, "cannot write " + tmp.string());
    f << text;
    f.flush();
    if (!f) throw error(errc::invalid_argument, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw error(errc::invalid_argument, "cannot rename onto " + path + ": " + ec.message());
  }
}

void emit(std::ostream& out, const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_atomic(out_path, text);
  }
}

std::string flag(bool b) { return b ? "true" : "false"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Björck CAZAC sequences, ambiguity functions and exponential sums", "bjorck"};
  app.require_subcommand(1);

  std::string out_path;
  double tol = default_tolerance;
  unsigned jobs = 1;
  bool full_precision = false;

  // gen
  sequence_flags gen_f;
  auto* gen = app.add_subcommand("gen", "Write a sequence, one \"re,im\" sample per line");
  add_sequence_flags(gen, gen_f, false);
  gen->add_option("--out", out_path, "Output file (written atomically)");

  // verify
  sequence_flags ver_f;
  auto* verify = app.add_subcommand("verify", "CAZAC and bi-unimodularity report");
  add_sequence_flags(verify, ver_f, true);
  verify->add_option("--tol", tol, "Absolute tolerance")->check(CLI::PositiveNumber)->capture_default_str();

  // ambiguity
  sequence_flags amb_f;
  std::optional<std::int64_t> amb_row;
  bool amb_table = false;
  std::int64_t amb_cap = default_table_cap;
  std::string amb_method = "full";
  auto* amb = app.add_subcommand("ambiguity", "Ambiguity function: max (default), one row, or the full table");
  add_sequence_flags(amb, amb_f, true);
  auto* row_opt = amb->add_option("--row", amb_row, "Emit row M as CSV n,re,im,abs");
  amb->add_flag("--table", amb_table, "Emit the full table as CSV m,n,re,im,abs")->excludes(row_opt);
  amb->add_option("--cap", amb_cap, "Largest p accepted by --table")->capture_default_str();
  amb->add_option("--method", amb_method, "Max evaluation: all rows or the residue-orbit reduction")
      ->check(CLI::IsMember({"full", "orbit"}))
      ->capture_default_str();
  amb->add_option("--jobs", jobs, "Worker threads for the max")->check(CLI::PositiveNumber);
  amb->add_option("--out", out_path, "Output file (written atomically)");

  // sums
  std::string sum_kind;
  std::int64_t sum_p = 0, sum_a = 1, sum_b = 1, sum_t = 0, sum_m = 1, sum_n = 1;
  auto* sums = app.add_subcommand("sums", "Kloosterman, Gauss, Salie and Jacobsthal sums; Weil audit");
  sums->add_option("--kind", sum_kind, "Which sum")
      ->required()
      ->check(CLI::IsMember({"kloosterman", "gauss", "salie", "jacobsthal", "weil-audit", "char-ambiguity"}));
  sums->add_option("--p", sum_p, "Odd prime")->required();
  sums->add_option("--a", sum_a)->capture_default_str();
  sums->add_option("--b", sum_b)->capture_default_str();
  sums->add_option("--t", sum_t)->capture_default_str();
  sums->add_option("--m", sum_m)->capture_default_str();
  sums->add_option("--n", sum_n)->capture_default_str();

  // scan
  std::string scan_range_text;
  std::string scan_class = "all";
  std::string scan_format = "csv";
  std::string scan_method_text = "orbit";
  bool scan_timing = false;
  bool scan_uncapped = false;
  bool scan_exceedances = false;
  auto* scan = app.add_subcommand("scan", "Sweep Björck sequences over a prime range");
  scan->add_option("--range", scan_range_text, "LO:HI")->required();
  scan->add_option("--class", scan_class)->check(CLI::IsMember({"1mod4", "3mod4", "all"}))->capture_default_str();
  scan->add_option("--format", scan_format)->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();
  scan->add_option("--method", scan_method_text)->check(CLI::IsMember({"full", "orbit"}))->capture_default_str();
  scan->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  scan->add_flag("--full-precision", full_precision, "17 significant digits in CSV");
  scan->add_flag("--timing", scan_timing, "Include elapsed_ms in JSON Lines output");
  scan->add_flag("--no-cap", scan_uncapped, fmt::format("Allow primes above {}", default_scan_cap));
  scan->add_flag("--exceedances", scan_exceedances, "Only list primes whose max exceeds 2/sqrt(p)");
  scan->add_option("--out", out_path, "Output file (written atomically)");

  // table
  std::vector<std::int64_t> table_list;
  std::string table_method_text = "orbit";
  auto* table = app.add_subcommand("table", "Max off-origin ambiguity against 2/sqrt(p) for a list of primes");
  table->add_option("--primes", table_list, "Comma-separated primes (default: the reference list)")->delimiter(',');
  table->add_option("--method", table_method_text)->check(CLI::IsMember({"full", "orbit"}))->capture_default_str();
  table->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  table->add_flag("--full-precision", full_precision);
  table->add_option("--out", out_path, "Output file (written atomically)");

  // figure
  std::string fig_range_text = "3:1000";
  std::string fig_method_text = "orbit";
  auto* figure = app.add_subcommand("figure", "Plot data: p, max, 2/sqrt(p), 2/sqrt(p)+4/p");
  figure->add_option("--range", fig_range_text, "LO:HI")->capture_default_str();
  figure->add_option("--method", fig_method_text)->check(CLI::IsMember({"full", "orbit"}))->capture_default_str();
  figure->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  figure->add_flag("--full-precision", full_precision);
  figure->add_option("--out", out_path, "Output file (written atomically)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }

  try {
    if (*gen) {
      emit(out, out_path, serialize(build_sequence(gen_f)));
    } else if (*verify) {
      const auto u = build_sequence(ver_f);
      const auto rep = verify_cazac(u, tol);
      const bool bi = verify_biunimodular(u, tol);
      out << fmt::format("p={}\nlabel={}\nca_ok={}\nzac_ok={}\nbiunimodular={}\nmax_violation={:.3e}\n", u.p(),
                         u.label(), flag(rep.ca_ok), flag(rep.zac_ok), flag(bi), rep.max_violation);
      // Built-in families are CAZAC by theorem; a failure there is a bug.
      if (ver_f.in.empty() && !(rep.ca_ok && rep.zac_ok && bi)) return invariant_failed;
    } else if (*amb) {
      const auto u = build_sequence(amb_f);
      if (amb_row) {
        const auto row = compute_ambiguity_row(u, *amb_row);
        std::string text = "n,re,im,abs\n";
        for (std::size_t n = 0; n < row.values.size(); ++n) {
          const auto z = row.values[n];
          fmt::format_to(std::back_inserter(text), "{},{:.17g},{:.17g},{:.17g}\n", n, z.real(), z.imag(),
                         std::abs(z));
        }
        emit(out, out_path, text);
      } else if (amb_table) {
        emit(out, out_path, to_csv(compute_ambiguity_table(u, amb_cap)));
      } else {
        const auto mx = amb_method == "orbit" ? ambiguity_max_orbit(u) : ambiguity_max(u, jobs);
        std::string text = fmt::format("p={}\nlabel={}\nmax_abs={:.17g}\nargmax_m={}\nargmax_n={}\n", u.p(),
                                       u.label(), mx.max_abs, mx.m, mx.n);
        const bool is_bjorck = amb_f.in.empty() && amb_f.kind == "bjorck";
        if (is_bjorck) text += fmt::format("mbound={:.17g}\n", mbound(u.p()));
        emit(out, out_path, text);
        if (is_bjorck && !(mx.max_abs < mbound(u.p()))) {
          err << "error: measured max is not below the theoretical bound\n";
          return invariant_failed;
        }
      }
    } else if (*sums) {
      const sum_context ctx(sum_p);
      nlohmann::ordered_json j;
      if (sum_kind == "weil-audit") {
        const auto r = weil_audit(sum_p);
        out << to_json(r) << '\n';
        return r.max_ratio <= 1.0 ? ok : invariant_failed;
      }
      j["p"] = sum_p;
      if (sum_kind == "kloosterman") {
        j["a"] = sum_a;
        j["b"] = sum_b;
        j["value"] = ctx.kloosterman(sum_a, sum_b).value;
      } else if (sum_kind == "gauss") {
        const auto g = ctx.gauss_sum(sum_a);
        j["a"] = sum_a;
        j["re"] = g.real();
        j["im"] = g.imag();
      } else if (sum_kind == "salie") {
        j["a"] = sum_a;
        j["value"] = ctx.salie_form(sum_a);
      } else if (sum_kind == "jacobsthal") {
        j["t"] = sum_t;
        j["a"] = sum_a;
        j["count"] = ctx.jacobsthal_count(sum_t, sum_a);
      } else {
        const auto d = char_ambiguity(ctx, sum_m, sum_n, char_method::direct);
        const auto k = char_ambiguity(ctx, sum_m, sum_n, char_method::kloosterman);
        j["m"] = sum_m;
        j["n"] = sum_n;
        j["direct"] = {d.real(), d.imag()};
        j["kloosterman"] = {k.real(), k.imag()};
      }
      out << j.dump() << '\n';
    } else if (*scan) {
      const auto [lo, hi] = parse_range(scan_range_text);
      scan_options opts;
      opts.jobs = jobs;
      opts.only = parse_class(scan_class);
      opts.method = parse_method(scan_method_text);
      opts.cap = scan_uncapped ? 0 : default_scan_cap;
      opts.warn = [&err](const std::string& m) { err << m << '\n'; };
      const auto records = scan_range(lo, hi, opts);
      std::string text;
      if (scan_exceedances) {
        for (auto p : find_exceedances(records)) text += fmt::format("{}\n", p);
      } else {
        text = scan_format == "jsonl" ? to_jsonl(records, scan_timing) : to_csv(records, full_precision);
      }
      emit(out, out_path, text);
    } else if (*table) {
      std::vector<std::int64_t> primes = table_list;
      if (primes.empty()) primes.assign(default_table_primes().begin(), default_table_primes().end());
      scan_options opts;
      opts.jobs = jobs;
      opts.method = parse_method(table_method_text);
      opts.cap = 0;
      opts.warn = [&err](const std::string& m) { err << m << '\n'; };
      emit(out, out_path, table_csv(scan_primes(primes, opts), full_precision));
    } else if (*figure) {
      const auto [lo, hi] = parse_range(fig_range_text);
      scan_options opts;
      opts.jobs = jobs;
      opts.method = parse_method(fig_method_text);
      opts.warn = [&err](const std::string& m) { err << m << '\n'; };
      emit(out, out_path, figure_csv(scan_range(lo, hi, opts), full_precision));
    }
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == errc::invariant_violation ? invariant_failed : usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  }
  return ok;
}

}  // namespace bjorck::cli
