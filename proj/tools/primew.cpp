// Command line front end: evaluates both real W branches, sweeps the bound
// families against sieve truth, locates empirical validity thresholds and the
// lower-bound crossover, regenerates figure data as CSV, and prints
// convergence tables.
#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "primew/asymptotics.hpp"
#include "primew/bounds.hpp"
#include "primew/lambert_w.hpp"
#include "primew/prime_table.hpp"

namespace {

constexpr double kE = 2.71828182845904523536;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(hw, 1u, 8u);
}

// Sieve span covering p_1 .. p_{n+1}; one prime of headroom past the request.
std::uint64_t sieve_limit_for_pn(std::int64_t n_max) {
  const double bound = primew::pn_upper(static_cast<std::uint64_t>(n_max) + 1, kE);
  return static_cast<std::uint64_t>(std::ceil(bound)) + 1;
}

bool is_pn_family(primew::BoundFamily f) {
  using primew::BoundFamily;
  return f == BoundFamily::pn_upper || f == BoundFamily::pn_lower ||
         f == BoundFamily::pn_band_upper || f == BoundFamily::pn_band_lower;
}

struct BoundFlags {
  std::string id;
  std::optional<double> eps;
  std::optional<double> coeff;
  std::optional<double> shift;
};

// Builds the spec and rejects parameter flags that do not belong to the
// family, so every accepted invocation is unambiguous.
primew::BoundSpec spec_from_flags(const BoundFlags& flags) {
  using primew::BoundFamily;
  primew::BoundSpec spec;
  spec.family = primew::family_from_id(flags.id);

  const bool wants_eps = spec.family == BoundFamily::pi_lower_power ||
                         spec.family == BoundFamily::pn_band_upper ||
                         spec.family == BoundFamily::pn_band_lower;
  const bool wants_coeff = spec.family == BoundFamily::pi_lower_linear;
  const bool wants_shift = spec.family == BoundFamily::pn_upper;

  if (flags.eps && !wants_eps) {
    throw std::invalid_argument("--eps does not apply to bound " + flags.id);
  }
  if (flags.coeff && !wants_coeff) {
    throw std::invalid_argument("--coeff does not apply to bound " + flags.id);
  }
  if (flags.shift && !wants_shift) {
    throw std::invalid_argument("--shift does not apply to bound " + flags.id);
  }
  if (wants_eps) {
    if (!flags.eps) throw std::invalid_argument("bound " + flags.id + " requires --eps");
    spec.epsilon = *flags.eps;
  }
  if (wants_coeff) {
    if (!flags.coeff) throw std::invalid_argument("bound " + flags.id + " requires --coeff");
    spec.linear_coeff = *flags.coeff;
  }
  if (wants_shift) {
    spec.shift = flags.shift.value_or(0.0);
  }
  return spec;
}

void print_report(const primew::ValidityReport& report, bool pn_family) {
  const char* arg_name = pn_family ? "n" : "x";
  const char* truth_name = pn_family ? "p_n" : "pi";
  constexpr std::size_t kMaxListed = 100;

  std::size_t listed = 0;
  for (const auto& v : report.violations) {
    if (listed++ == kMaxListed) break;
    std::cout << "violation " << arg_name << "=" << v.argument << " bound="
              << (std::isnan(v.bound) ? std::string("out-of-domain") : fmt(v.bound))
              << " " << truth_name << "=" << v.truth << "\n";
  }
  if (report.violations.size() > kMaxListed) {
    std::cout << "... and " << report.violations.size() - kMaxListed
              << " more violations\n";
  }
  for (const auto m : report.marginal) {
    std::cout << "marginal " << arg_name << "=" << m << "\n";
  }
  if (!report.skipped.empty()) {
    std::cout << "skipped " << report.skipped.size() << " out-of-domain points\n";
  }
  std::cout << report.violations.size() << " violations\n";
  if (report.empirical_threshold) {
    std::cout << "threshold " << *report.empirical_threshold << "\n";
  } else {
    std::cout << "threshold absent\n";
  }
}

std::vector<std::int64_t> parse_points(const std::string& csv) {
  std::vector<std::int64_t> points;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string token =
        csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--points: '" + token + "' is not an integer");
    }
    if (used != token.size() || value < 1) {
      throw std::invalid_argument("--points: '" + token + "' is not a positive integer");
    }
    points.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (points.empty()) throw std::invalid_argument("--points: empty list");
  return points;
}

int run_w_eval(int branch, double x) {
  if (branch != 0 && branch != -1) {
    throw std::invalid_argument("--branch must be 0 or -1");
  }
  const primew::WResult r = primew::lambert_w(
      branch == 0 ? primew::Branch::principal : primew::Branch::minus_one, x);
  std::cout << "value " << fmt(r.value) << "\n";
  std::cout << "residual " << fmt(r.residual) << "\n";
  std::cout << "iterations " << r.iterations << "\n";
  return 0;
}

int run_verify(const BoundFlags& flags, std::int64_t from, std::int64_t to) {
  const primew::BoundSpec spec = spec_from_flags(flags);
  const bool pn = is_pn_family(spec.family);
  const std::uint64_t limit =
      pn ? sieve_limit_for_pn(to) : std::max<std::uint64_t>(2, to);
  const auto table = primew::PrimeTable::build(limit);
  const auto report =
      primew::verify_range(spec, table, from, to, default_workers());
  print_report(report, pn);
  return report.violations.empty() ? 0 : 1;
}

int run_threshold(const BoundFlags& flags, std::int64_t to) {
  const primew::BoundSpec spec = spec_from_flags(flags);
  const bool pn = is_pn_family(spec.family);
  const std::uint64_t limit =
      pn ? sieve_limit_for_pn(to) : std::max<std::uint64_t>(2, to);
  const auto table = primew::PrimeTable::build(limit);
  const auto threshold =
      primew::find_threshold(spec, table, to, default_workers());
  if (threshold) {
    std::cout << "threshold " << *threshold << "\n";
  } else {
    std::cout << "threshold absent\n";
  }
  return 0;
}

int run_crossover(double eps_a, double eps_b, double lo, double hi) {
  primew::BoundSpec a{primew::BoundFamily::pi_lower_power};
  a.epsilon = eps_a;
  primew::BoundSpec b{primew::BoundFamily::pi_lower_power};
  b.epsilon = eps_b;
  const double xstar = primew::find_crossover(a, b, lo, hi);
  std::cout << "crossover " << fmt(xstar) << "\n";
  return 0;
}

int run_figures(const std::string& out_dir, std::int64_t xmax, std::int64_t nmax) {
  if (xmax < 1 || nmax < 1) {
    throw std::invalid_argument("--xmax and --nmax must be positive");
  }
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const std::uint64_t limit =
      std::max<std::uint64_t>(sieve_limit_for_pn(nmax),
                              std::max<std::uint64_t>(2, xmax));
  const auto table = primew::PrimeTable::build(limit);

  const auto open = [&](const char* name) {
    std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
    if (!out) throw std::runtime_error(std::string("cannot open ") + name);
    return out;
  };

  {
    auto out = open("figure1.csv");
    out << "x,pi,upper\n";
    for (std::int64_t k = 1; k <= 2 * xmax; ++k) {
      const double x = 0.5 * static_cast<double>(k);
      out << fmt(x) << "," << table.pi(x) << "," << fmt(primew::pi_upper(x))
          << "\n";
    }
  }
  {
    auto out = open("figure2.csv");
    out << "x,pi,upper,lower_eps_inv_e,lower_eps_inv_e3\n";
    const double inv_e = std::exp(-1.0);
    const double inv_e3 = std::exp(-3.0);
    for (std::int64_t k = 1; k <= 2 * xmax; ++k) {
      const double x = 0.5 * static_cast<double>(k);
      out << fmt(x) << "," << table.pi(x) << "," << fmt(primew::pi_upper(x))
          << "," << fmt(primew::pi_lower_power(x, inv_e)) << ","
          << fmt(primew::pi_lower_power(x, inv_e3)) << "\n";
    }
  }
  {
    auto out = open("figure3.csv");
    out << "n,p_n,upper_thm5,upper_cor3\n";
    for (std::int64_t n = 1; n <= nmax; ++n) {
      const auto un = static_cast<std::uint64_t>(n);
      out << n << "," << table.nth_prime(un) << ","
          << (n >= 4 ? fmt(primew::pn_upper(un, 0.0)) : std::string()) << ","
          << fmt(primew::pn_upper(un, kE)) << "\n";
    }
  }
  {
    auto out = open("figure4.csv");
    out << "n,p_n,lower_thm8\n";
    for (std::int64_t n = 1; n <= nmax; ++n) {
      const auto un = static_cast<std::uint64_t>(n);
      out << n << "," << table.nth_prime(un) << ","
          << (n >= 14 ? fmt(primew::pn_lower(un)) : std::string()) << "\n";
    }
  }
  {
    auto out = open("figureW.csv");
    out << "x,w0,wm1\n";
    constexpr int kSteps = 400;
    const double step = (4.0 - primew::branch_point_x) / kSteps;
    for (int k = 0; k <= kSteps; ++k) {
      const double x = primew::branch_point_x + step * k;
      out << fmt(x) << "," << fmt(primew::w0(x).value) << ","
          << (x < 0.0 ? fmt(primew::wm1(x).value) : std::string()) << "\n";
    }
  }
  for (const char* name :
       {"figure1.csv", "figure2.csv", "figure3.csv", "figure4.csv", "figureW.csv"}) {
    std::cout << "wrote " << (fs::path(out_dir) / name).string() << "\n";
  }
  return 0;
}

int run_asym(const std::string& kind, const std::string& points_csv) {
  const auto points = parse_points(points_csv);
  const std::int64_t max_point = *std::max_element(points.begin(), points.end());

  if (kind == "pi") {
    const auto table =
        primew::PrimeTable::build(std::max<std::uint64_t>(2, max_point));
    std::cout << "x,pi,x_over_w,ratio,rel_error\n";
    for (const auto& row : primew::pi_ratio_table(table, points)) {
      std::cout << row.index << "," << row.truth << ","
                << fmt(row.estimates.at("x_over_w")) << ","
                << fmt(row.ratios.at("x_over_w")) << ","
                << fmt(row.rel_error.at("x_over_w")) << "\n";
    }
    return 0;
  }

  const auto table = primew::PrimeTable::build(sieve_limit_for_pn(max_point));
  if (kind == "pn-basic" || kind == "pn-refined") {
    const auto variant = kind == "pn-basic" ? primew::PnVariant::basic
                                            : primew::PnVariant::refined;
    const char* column = kind == "pn-basic" ? "basic" : "refined";
    std::cout << "n,p_n," << column << ",ratio,rel_error\n";
    for (const std::int64_t n : points) {
      const auto un = static_cast<std::uint64_t>(n);
      const double truth = static_cast<double>(table.nth_prime(un));
      const double est = primew::pn_estimate(un, variant);
      std::cout << n << "," << table.nth_prime(un) << "," << fmt(est) << ","
                << fmt(truth / est) << "," << fmt(std::abs(est - truth) / truth)
                << "\n";
    }
    return 0;
  }
  if (kind == "expansion") {
    std::cout << "n,p_n,basic,refined,cc1,cc2,cc3\n";
    for (const auto& row : primew::expansion_error_report(table, points)) {
      std::cout << row.index << "," << row.truth << ","
                << fmt(row.estimates.at("basic")) << ","
                << fmt(row.estimates.at("refined")) << ","
                << fmt(row.estimates.at("cc1")) << ","
                << fmt(row.estimates.at("cc2")) << ","
                << fmt(row.estimates.at("cc3")) << "\n";
    }
    return 0;
  }
  throw std::invalid_argument(
      "--kind must be one of pi, pn-basic, pn-refined, expansion");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Lambert W bounds and asymptotics for the prime counting function "
      "and the n'th prime"};
  app.require_subcommand(1);

  // w-eval
  auto* w_eval = app.add_subcommand("w-eval", "Evaluate a real W branch");
  int branch = 0;
  double x = 0.0;
  w_eval->add_option("--branch", branch, "Branch selector: 0 or -1")->required();
  w_eval->add_option("--x", x, "Argument")->required();

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Sweep a bound over an integer range against sieve truth");
  BoundFlags verify_flags;
  std::int64_t from = 0, to = 0;
  verify->add_option("--bound", verify_flags.id, "Bound id")->required();
  auto* v_eps = verify->add_option("--eps", "Epsilon parameter");
  auto* v_coeff = verify->add_option("--coeff", "Linear coefficient c");
  auto* v_shift = verify->add_option("--shift", "Shift added to n");
  verify->add_option("--from", from, "Range start")->required();
  verify->add_option("--to", to, "Range end")->required();

  // threshold
  auto* threshold = app.add_subcommand(
      "threshold", "Empirical validity threshold of a bound");
  BoundFlags threshold_flags;
  std::int64_t thr_to = 0;
  threshold->add_option("--bound", threshold_flags.id, "Bound id")->required();
  auto* t_eps = threshold->add_option("--eps", "Epsilon parameter");
  auto* t_coeff = threshold->add_option("--coeff", "Linear coefficient c");
  auto* t_shift = threshold->add_option("--shift", "Shift added to n");
  threshold->add_option("--to", thr_to, "Range end")->required();

  // crossover
  auto* crossover = app.add_subcommand(
      "crossover", "Crossing point of two power-family pi lower bounds");
  double eps_a = 0.0, eps_b = 0.0, lo = 0.0, hi = 0.0;
  crossover->add_option("--eps-a", eps_a, "Epsilon of bound A")->required();
  crossover->add_option("--eps-b", eps_b, "Epsilon of bound B")->required();
  crossover->add_option("--lo", lo, "Interval start")->required();
  crossover->add_option("--hi", hi, "Interval end")->required();

  // figures
  auto* figures = app.add_subcommand("figures", "Emit the five figure CSV files");
  std::string out_dir;
  std::int64_t xmax = 100, nmax = 100;
  figures->add_option("--out", out_dir, "Output directory")->required();
  figures->add_option("--xmax", xmax, "Largest x in figures 1-2 (default 100)");
  figures->add_option("--nmax", nmax, "Largest n in figures 3-4 (default 100)");

  // asym
  auto* asym = app.add_subcommand("asym", "Convergence tables");
  std::string kind, points_csv;
  asym->add_option("--kind", kind, "pi | pn-basic | pn-refined | expansion")
      ->required();
  asym->add_option("--points", points_csv, "Comma-separated integers")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto opt_value = [](CLI::Option* opt) -> std::optional<double> {
    if (opt->count() == 0) return std::nullopt;
    return opt->as<double>();
  };
  verify_flags.eps = opt_value(v_eps);
  verify_flags.coeff = opt_value(v_coeff);
  verify_flags.shift = opt_value(v_shift);
  threshold_flags.eps = opt_value(t_eps);
  threshold_flags.coeff = opt_value(t_coeff);
  threshold_flags.shift = opt_value(t_shift);

  try {
    if (w_eval->parsed()) return run_w_eval(branch, x);
    if (verify->parsed()) return run_verify(verify_flags, from, to);
    if (threshold->parsed()) return run_threshold(threshold_flags, thr_to);
    if (crossover->parsed()) return run_crossover(eps_a, eps_b, lo, hi);
    if (figures->parsed()) return run_figures(out_dir, xmax, nmax);
    if (asym->parsed()) return run_asym(kind, points_csv);
  } catch (const primew::bracket_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const primew::ambiguity_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
