#include "primew/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "primew/lambert_w.hpp"

namespace primew {
namespace {

constexpr double kE = 2.71828182845904523536;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_pi_family(BoundFamily f) {
  switch (f) {
    case BoundFamily::pi_upper_w:
    case BoundFamily::pi_lower_power:
    case BoundFamily::pi_lower_linear:
    case BoundFamily::u_inverse:
      return true;
    default:
      return false;
  }
}

bool is_upper_family(BoundFamily f) {
  return f == BoundFamily::pi_upper_w || f == BoundFamily::pn_upper ||
         f == BoundFamily::pn_band_upper;
}

// Bound value at integer k; throws std::domain_error where the family is
// undefined.
double evaluate(const BoundSpec& spec, std::int64_t k) {
  switch (spec.family) {
    case BoundFamily::pi_upper_w:
      return pi_upper(static_cast<double>(k));
    case BoundFamily::pi_lower_power:
      return pi_lower_power(static_cast<double>(k), spec.epsilon);
    case BoundFamily::pi_lower_linear:
      return pi_lower_linear(static_cast<double>(k), spec.linear_coeff);
    case BoundFamily::pn_upper:
      return pn_upper(static_cast<std::uint64_t>(k), spec.shift);
    case BoundFamily::pn_lower:
      return pn_lower(static_cast<std::uint64_t>(k));
    case BoundFamily::pn_band_upper: {
      const PnBand band = pn_band(static_cast<std::uint64_t>(k), spec.epsilon);
      if (!band.upper) throw std::domain_error("band upper side absent");
      return *band.upper;
    }
    case BoundFamily::pn_band_lower: {
      const PnBand band = pn_band(static_cast<std::uint64_t>(k), spec.epsilon);
      if (!band.lower) throw std::domain_error("band lower side absent");
      return *band.lower;
    }
    case BoundFamily::u_inverse:
      return u_of(static_cast<double>(k)) - 1.0;
  }
  throw std::logic_error("evaluate: unknown bound family");
}

struct ChunkResult {
  std::vector<Violation> violations;
  std::vector<std::int64_t> skipped;
  std::vector<std::int64_t> marginal;
};

ChunkResult sweep_chunk(const BoundSpec& spec, const PrimeTable& table,
                        std::int64_t lo, std::int64_t hi) {
  ChunkResult out;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const detail::PointCheck c = detail::check_point(spec, table, k);
    switch (c.status) {
      case detail::PointStatus::violated:
        out.violations.push_back({k, c.bound, c.truth});
        break;
      case detail::PointStatus::out_of_domain:
        out.skipped.push_back(k);
        break;
      case detail::PointStatus::holds:
        break;
    }
    if (c.marginal) out.marginal.push_back(k);
  }
  return out;
}

void validate_range(const BoundSpec& spec, const PrimeTable& table,
                    std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::out_of_range("verify_range: lo > hi");
  if (is_pi_family(spec.family)) {
    if (lo < 0 || static_cast<std::uint64_t>(hi) > table.limit()) {
      throw std::out_of_range("verify_range: [lo, hi] outside table limit");
    }
  } else {
    if (lo < 1 || static_cast<std::uint64_t>(hi) > table.prime_count()) {
      throw std::out_of_range("verify_range: [lo, hi] outside prime count");
    }
  }
}

}  // namespace

std::string to_id(BoundFamily family) {
  switch (family) {
    case BoundFamily::pi_upper_w: return "pi-upper-w";
    case BoundFamily::pi_lower_power: return "pi-lower-power";
    case BoundFamily::pi_lower_linear: return "pi-lower-linear";
    case BoundFamily::pn_upper: return "pn-upper";
    case BoundFamily::pn_lower: return "pn-lower";
    case BoundFamily::pn_band_upper: return "pn-band-upper";
    case BoundFamily::pn_band_lower: return "pn-band-lower";
    case BoundFamily::u_inverse: return "u-inverse";
  }
  throw std::logic_error("to_id: unknown bound family");
}

BoundFamily family_from_id(std::string_view id) {
  if (id == "pi-upper-w") return BoundFamily::pi_upper_w;
  if (id == "pi-lower-power") return BoundFamily::pi_lower_power;
  if (id == "pi-lower-linear") return BoundFamily::pi_lower_linear;
  if (id == "pn-upper") return BoundFamily::pn_upper;
  if (id == "pn-lower") return BoundFamily::pn_lower;
  if (id == "pn-band-upper") return BoundFamily::pn_band_upper;
  if (id == "pn-band-lower") return BoundFamily::pn_band_lower;
  if (id == "u-inverse") return BoundFamily::u_inverse;
  throw std::invalid_argument("unknown bound id: " + std::string(id));
}

double pi_upper(double x) {
  if (!(x >= 0.0)) throw std::domain_error("pi_upper: requires x >= 0");
  return std::exp(w0(x).value);
}

double pi_lower_power(double x, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("pi_lower_power: requires eps > 0");
  if (!(x >= 0.0)) throw std::domain_error("pi_lower_power: requires x >= 0");
  if (x == 0.0) {
    return std::pow(eps * kE, 1.0 / (1.0 + eps)) - 1.0;
  }
  const double z = x / (1.0 + eps);
  const double factor = std::pow(eps * kE, -1.0 / (1.0 + eps));
  return z / w0(z * factor).value - 1.0;
}

double pi_lower_linear(double x, double c) {
  if (!(c > 0.0)) throw std::domain_error("pi_lower_linear: requires c > 0");
  if (!(x > 0.0)) throw std::domain_error("pi_lower_linear: requires x > 0");
  const double z = x / (1.0 + c);
  return z / w0(z).value - 1.0;
}

double pn_upper(std::uint64_t n, double shift) {
  if (n < 1 || !(shift >= 0.0)) {
    throw std::domain_error("pn_upper: requires n >= 1 and shift >= 0");
  }
  const double arg = -1.0 / (static_cast<double>(n) + shift);
  return -static_cast<double>(n) * wm1(arg).value;
}

double pn_lower(std::uint64_t n) {
  if (n < 14) {
    throw std::domain_error(
        "pn_lower: requires n >= 14 (W_{-1} argument below -1/e otherwise)");
  }
  const double m = static_cast<double>(n - 1);
  const double arg = -std::exp(1.5) / m;
  return -m * wm1(arg).value;
}

PnBand pn_band(std::uint64_t n, double eps) {
  if (n < 1 || !(eps > 0.0)) {
    throw std::domain_error("pn_band: requires n >= 1 and eps > 0");
  }
  PnBand band;
  const double upper_arg = -std::exp(1.0 - eps) / static_cast<double>(n);
  if (upper_arg >= branch_point_x) {
    band.upper = -static_cast<double>(n) * wm1(upper_arg).value;
  }
  if (n >= 2) {
    const double m = static_cast<double>(n - 1);
    const double lower_arg = -std::exp(1.0 + eps) / m;
    if (lower_arg >= branch_point_x) {
      band.lower = -m * wm1(lower_arg).value;
    }
  }
  if (!band.upper && !band.lower) {
    throw std::domain_error("pn_band: both sides outside the W_{-1} domain");
  }
  return band;
}

double u_of(double x) {
  if (!std::isfinite(x)) throw std::domain_error("u_of: requires finite x");
  const auto forward = [](double z) { return z * std::log(z * std::log(z)); };

  double lo = 1.0 + 1e-6;
  double hi = std::max(kE, x);
  int guard = 0;
  while (forward(hi) < x) {
    hi *= 2.0;
    if (++guard > 2000) throw std::runtime_error("u_of: bracket expansion failed");
  }
  while (forward(lo) > x) {
    lo = 1.0 + (lo - 1.0) * 0.25;
    if (lo == 1.0 || ++guard > 2000) {
      throw std::runtime_error("u_of: bracket shrink failed");
    }
  }
  // Newton safeguarded by the bracket: any step that leaves [lo, hi] is
  // replaced by a bisection. Very negative x push the root so close to 1
  // that double spacing caps the attainable residual; elsewhere the f-based
  // exit fires well before the bracket collapses.
  const double f_tol = 1e-12 * std::max(1.0, std::abs(x));
  double z = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    const double lz = std::log(z);
    const double f = z * std::log(z * lz) - x;
    if (std::abs(f) <= f_tol) return z;
    (f < 0.0 ? lo : hi) = z;
    const double df = std::log(z * lz) + (lz + 1.0) / lz;
    double next = z - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == z) return z;  // bracket exhausted at ulp level
    z = next;
  }
  return z;
}

namespace detail {

PointCheck compare_strict(double bound, std::int64_t truth, bool bound_is_upper) {
  PointCheck out;
  out.bound = bound;
  out.truth = truth;
  const double t = static_cast<double>(truth);
  out.status = (bound_is_upper ? t < bound : t > bound) ? PointStatus::holds
                                                        : PointStatus::violated;
  out.marginal = std::abs(bound - t) <= 1e-9 * std::max(1.0, std::abs(bound));
  return out;
}

PointCheck check_point(const BoundSpec& spec, const PrimeTable& table,
                       std::int64_t k) {
  const bool upper = is_upper_family(spec.family);
  double bound;
  try {
    bound = evaluate(spec, k);
  } catch (const std::domain_error&) {
    // For pn_upper the claim "p_n < -n W_{-1}(-1/(n+shift))" simply fails
    // wherever the right side does not exist; the other families exclude such
    // points by their stated domains.
    if (spec.family == BoundFamily::pn_upper) {
      const auto truth = static_cast<std::int64_t>(
          table.nth_prime(static_cast<std::uint64_t>(k)));
      return {PointStatus::violated, kNaN, truth, false};
    }
    return {PointStatus::out_of_domain, kNaN, 0, false};
  }
  const std::int64_t truth =
      is_pi_family(spec.family)
          ? static_cast<std::int64_t>(table.pi(static_cast<double>(k)))
          : static_cast<std::int64_t>(
                table.nth_prime(static_cast<std::uint64_t>(k)));
  return compare_strict(bound, truth, upper);
}

}  // namespace detail

ValidityReport verify_range(const BoundSpec& spec, const PrimeTable& table,
                            std::int64_t lo, std::int64_t hi,
                            unsigned workers) {
  validate_range(spec, table, lo, hi);

  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const unsigned used = static_cast<unsigned>(
      std::min<std::uint64_t>(std::max(1u, workers), span));

  std::vector<ChunkResult> parts(used);
  if (used == 1) {
    parts[0] = sweep_chunk(spec, table, lo, hi);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(used);
    const std::uint64_t chunk = (span + used - 1) / used;
    for (unsigned i = 0; i < used; ++i) {
      const std::int64_t a = lo + static_cast<std::int64_t>(i * chunk);
      const std::int64_t b =
          std::min<std::int64_t>(hi, a + static_cast<std::int64_t>(chunk) - 1);
      pool.emplace_back([&, i, a, b] { parts[i] = sweep_chunk(spec, table, a, b); });
    }
    for (auto& t : pool) t.join();
  }

  ValidityReport report;
  report.spec = spec;
  report.lo = lo;
  report.hi = hi;
  for (const auto& part : parts) {
    report.violations.insert(report.violations.end(), part.violations.begin(),
                             part.violations.end());
    report.skipped.insert(report.skipped.end(), part.skipped.begin(),
                          part.skipped.end());
    report.marginal.insert(report.marginal.end(), part.marginal.begin(),
                           part.marginal.end());
  }

  if (report.violations.empty()) {
    report.empirical_threshold = lo;
  } else if (report.violations.back().argument == hi) {
    report.empirical_threshold = std::nullopt;
  } else {
    report.empirical_threshold = report.violations.back().argument + 1;
  }
  return report;
}

std::optional<std::int64_t> find_threshold(const BoundSpec& spec,
                                           const PrimeTable& table,
                                           std::int64_t hi, unsigned workers) {
  const std::int64_t lo = is_pi_family(spec.family) ? 0 : 1;
  return verify_range(spec, table, lo, hi, workers).empirical_threshold;
}

double find_crossover(const BoundSpec& a, const BoundSpec& b, double lo,
                      double hi) {
  const auto is_pi_lower = [](BoundFamily f) {
    return f == BoundFamily::pi_lower_power || f == BoundFamily::pi_lower_linear;
  };
  if (!is_pi_lower(a.family) || !is_pi_lower(b.family)) {
    throw std::domain_error("find_crossover: both specs must be pi lower bounds");
  }
  const auto eval_real = [](const BoundSpec& s, double x) {
    return s.family == BoundFamily::pi_lower_power
               ? pi_lower_power(x, s.epsilon)
               : pi_lower_linear(x, s.linear_coeff);
  };
  return detail::locate_single_root(
      [&](double x) { return eval_real(b, x) - eval_real(a, x); }, lo, hi, 128,
      1e-6);
}

}  // namespace primew
