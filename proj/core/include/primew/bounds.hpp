#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "primew/prime_table.hpp"

namespace primew {

/// The Lambert-W bound families on pi(x) and p_n.
enum class BoundFamily {
  pi_upper_w,      ///< pi(x) < e^{W(x)} = x/W(x), all x >= 0
  pi_lower_power,  ///< pi(x) > (x/(1+eps)) / W((x/(1+eps)) (eps*e)^{-1/(1+eps)}) - 1
  pi_lower_linear, ///< pi(x) > (x/(1+c)) / W(x/(1+c)) - 1
  pn_upper,        ///< p_n < -n W_{-1}(-1/(n+shift))
  pn_lower,        ///< p_n > -(n-1) W_{-1}(-e^{3/2}/(n-1)), n >= 14
  pn_band_upper,   ///< p_n < -n W_{-1}(-e^{1-eps}/n)
  pn_band_lower,   ///< p_n > -(n-1) W_{-1}(-e^{1+eps}/(n-1))
  u_inverse,       ///< pi(x) > U(x) - 1 with U the inverse of z -> z ln(z ln z)
};

/// One parameterized bound plus its claimed validity start (where known).
struct BoundSpec {
  BoundFamily family = BoundFamily::pi_upper_w;
  double epsilon = 0.0;       ///< pi_lower_power, pn_band_*
  double linear_coeff = 0.0;  ///< pi_lower_linear; c = e^{-2+eps}
  double shift = 0.0;         ///< pn_upper
  std::optional<std::int64_t> claimed_from;
};

/// Stable identifier used by the CLI and reports (e.g. "pi-upper-w").
std::string to_id(BoundFamily family);
BoundFamily family_from_id(std::string_view id);

// -- Bound evaluators ---------------------------------------------------------

/// e^{W_0(x)}; equals x/W_0(x) for x > 0 and 1 at x = 0. Strict upper bound
/// for pi(x) on x >= 0.
double pi_upper(double x);

/// (x/(1+eps)) / W_0((x/(1+eps)) (eps e)^{-1/(1+eps)}) - 1 for x > 0, eps > 0;
/// at x = 0 the analytic limit (eps e)^{1/(1+eps)} - 1.
double pi_lower_power(double x, double eps);

/// (x/(1+c)) / W_0(x/(1+c)) - 1 for x > 0, c > 0. Tends to 0 as x -> 0+.
double pi_lower_linear(double x, double c);

/// -n W_{-1}(-1/(n+shift)). Requires n + shift > e so the W argument stays
/// inside [-1/e, 0).
double pn_upper(std::uint64_t n, double shift);

/// -(n-1) W_{-1}(-e^{3/2}/(n-1)). Requires n >= 14 (the W_{-1} domain).
double pn_lower(std::uint64_t n);

/// Two-sided band -n W_{-1}(-e^{1-eps}/n) > p_n > -(n-1) W_{-1}(-e^{1+eps}/(n-1)).
/// A side whose W argument leaves [-1/e, 0) is reported absent; only when both
/// sides are absent is the call a domain error.
struct PnBand {
  std::optional<double> upper;
  std::optional<double> lower;
};
PnBand pn_band(std::uint64_t n, double eps);

/// U(x): the inverse of the increasing map z -> z ln(z ln z), z in (1, inf).
/// Satisfies |U(x) ln(U(x) ln U(x)) - x| <= 1e-10 max(1, |x|).
double u_of(double x);

// -- Range verification -------------------------------------------------------

/// A point where the claimed strict inequality fails. For pn_upper the claim
/// also fails wherever the W argument leaves its domain; such points carry
/// bound = NaN.
struct Violation {
  std::int64_t argument = 0;
  double bound = 0.0;
  std::int64_t truth = 0;
};

struct ValidityReport {
  BoundSpec spec;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::vector<Violation> violations;        ///< sorted by argument
  std::vector<std::int64_t> skipped;        ///< out-of-domain points (sorted)
  std::vector<std::int64_t> marginal;       ///< near-ties, flagged never passed silently
  std::optional<std::int64_t> empirical_threshold;
};

/// Evaluates the bound at every integer in [lo, hi] against the sieve truth
/// (strict inequality in the family's direction) and reports all violations,
/// skips, near-ties, and the empirical validity threshold. The range may be
/// sharded over `workers` threads; the merged report does not depend on the
/// partitioning.
ValidityReport verify_range(const BoundSpec& spec, const PrimeTable& table,
                            std::int64_t lo, std::int64_t hi,
                            unsigned workers = 1);

/// Smallest t such that the bound holds at every integer in [t, hi], searching
/// from the family's natural start (0 for pi bounds, 1 for p_n bounds).
/// Absent when the bound fails at hi itself.
std::optional<std::int64_t> find_threshold(const BoundSpec& spec,
                                           const PrimeTable& table,
                                           std::int64_t hi,
                                           unsigned workers = 1);

/// Raised by find_crossover when the sampled difference never changes sign.
struct bracket_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Raised by find_crossover when more than one sign change shows up at the
/// sampling density.
struct ambiguity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Locates the single crossover of two pi lower bounds on [lo, hi] by sampling
/// followed by bisection to 1e-6 absolute.
double find_crossover(const BoundSpec& a, const BoundSpec& b, double lo,
                      double hi);

namespace detail {

enum class PointStatus { holds, violated, out_of_domain };

struct PointCheck {
  PointStatus status = PointStatus::holds;
  double bound = 0.0;
  std::int64_t truth = 0;  ///< sieve value; unset for out_of_domain points
  bool marginal = false;
};

/// Strict comparison of truth against bound with near-tie flagging
/// (|bound - truth| <= 1e-9 max(1, |bound|)).
PointCheck compare_strict(double bound, std::int64_t truth, bool bound_is_upper);

/// Classification of one integer point under a bound spec.
PointCheck check_point(const BoundSpec& spec, const PrimeTable& table,
                       std::int64_t k);

/// Single sign change of fn on [lo, hi]: sample (log-spaced when lo > 0,
/// else uniform), insist on exactly one strict sign change, then bisect to
/// absolute tolerance. Shared by find_crossover and its tests.
template <typename Fn>
double locate_single_root(Fn&& fn, double lo, double hi, int samples,
                          double tol) {
  if (!(lo < hi) || samples < 2) {
    throw std::domain_error("locate_single_root: need lo < hi and >= 2 samples");
  }
  std::vector<double> xs(static_cast<std::size_t>(samples) + 1);
  const bool log_spaced = lo > 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    xs[i] = log_spaced ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  xs.front() = lo;
  xs.back() = hi;

  double a = 0.0, b = 0.0;
  int changes = 0;
  double prev = fn(xs[0]);
  for (int i = 1; i <= samples; ++i) {
    const double cur = fn(xs[i]);
    if (prev * cur < 0.0) {
      ++changes;
      a = xs[i - 1];
      b = xs[i];
    }
    prev = cur;
  }
  if (changes == 0) {
    throw bracket_error("no sign change in the sampled interval");
  }
  if (changes > 1) {
    throw ambiguity_error("multiple sign changes at the sampling density");
  }
  double fa = fn(a);
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    const double fm = fn(m);
    if (fa * fm <= 0.0) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace detail

}  // namespace primew
