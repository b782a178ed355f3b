#include "primew/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace primew {
namespace {

constexpr double kE = 2.71828182845904523536;
constexpr double kInvE = 0.36787944117144232159552377016146086744581113103176804;
constexpr double kBranchClamp = 1e-15;  // slack below -1/e absorbed as rounding
constexpr double kBranchSnap = 1e-12;   // |x + 1/e| below this returns -1 outright
constexpr int kMaxIterations = 50;

double residual_of(double w, double x) { return w * std::exp(w) - x; }

// Halley iteration on f(w) = w*e^w - x. The guess must already lie on the
// requested side of -1; steps that would cross the branch point are damped
// back toward it.
WResult halley(double x, double w, Branch branch) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // The residual early-out scales with |x| itself, not max(1, |x|): for
  // |x| << 1 an absolute cutoff would accept values of w with poor relative
  // accuracy, which x/W(x) = e^{W(x)} rewritings then amplify.
  const double f_tol = 1e-14 * std::abs(x);
  for (int it = 0; it < kMaxIterations; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= f_tol) {
      return {w, f, it};
    }
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    double next = w - f / denom;
    const bool crossed =
        branch == Branch::principal ? next < -1.0 : next > -1.0;
    if (crossed || !std::isfinite(next)) {
      next = 0.5 * (w - 1.0);  // midpoint between w and -1
    }
    const bool converged = std::abs(next - w) <= 4.0 * eps * std::abs(next);
    w = next;
    if (converged) {
      return {w, residual_of(w, x), it + 1};
    }
  }
  throw std::runtime_error("lambert_w: Halley iteration failed to converge at x=" +
                           std::to_string(x));
}

// Branch-point series W = -1 +/- p - p^2/3 with p = sqrt(2(e*x + 1)).
double branch_series_guess(double x, Branch branch) {
  double u = 2.0 * (kE * x + 1.0);
  if (u < 0.0) u = 0.0;
  const double p = std::sqrt(u);
  return branch == Branch::principal ? -1.0 + p - p * p / 3.0
                                     : -1.0 - p - p * p / 3.0;
}

double w0_guess(double x) {
  if (x < -0.25) return branch_series_guess(x, Branch::principal);
  if (x < kE) return std::log1p(x);
  const double lx = std::log(x);
  return lx - std::log(lx);
}

double wm1_guess(double x) {
  if (x < -0.25) return branch_series_guess(x, Branch::minus_one);
  const double l1 = std::log(-x);
  return l1 - std::log(-l1);
}

[[noreturn]] void domain_failure(const char* which, double x) {
  throw std::domain_error(std::string(which) + ": argument " +
                          std::to_string(x) + " outside branch domain");
}

}  // namespace

WResult w0(double x) {
  if (!std::isfinite(x)) domain_failure("w0", x);
  if (x < -kInvE) {
    if (x < -kInvE - kBranchClamp) domain_failure("w0", x);
    x = -kInvE;
  }
  if (std::abs(x + kInvE) < kBranchSnap) {
    return {-1.0, residual_of(-1.0, x), 0};
  }
  WResult r = halley(x, w0_guess(x), Branch::principal);
  if (r.value < -1.0) r.value = -1.0;
  return r;
}

WResult wm1(double x) {
  if (!std::isfinite(x) || x >= 0.0) domain_failure("wm1", x);
  if (x < -kInvE) {
    if (x < -kInvE - kBranchClamp) domain_failure("wm1", x);
    x = -kInvE;
  }
  if (std::abs(x + kInvE) < kBranchSnap) {
    return {-1.0, residual_of(-1.0, x), 0};
  }
  WResult r = halley(x, wm1_guess(x), Branch::minus_one);
  if (r.value > -1.0) r.value = -1.0;
  return r;
}

WResult lambert_w(Branch branch, double x) {
  return branch == Branch::principal ? w0(x) : wm1(x);
}

double asymptotic_estimate(Branch branch, double x) {
  if (branch == Branch::principal) {
    if (!std::isfinite(x) || x <= 1.0) {
      domain_failure("asymptotic_estimate[principal]", x);
    }
    const double lx = std::log(x);
    return lx - std::log(lx);
  }
  if (!std::isfinite(x) || x >= 0.0) {
    domain_failure("asymptotic_estimate[minus_one]", x);
  }
  if (x < -kInvE) {
    if (x < -kInvE - kBranchClamp) {
      domain_failure("asymptotic_estimate[minus_one]", x);
    }
    x = -kInvE;
  }
  const double l1 = std::log(-x);
  return l1 - std::log(-l1);
}

double solve_log_linear(const LogLinearProblem& p) {
  if (p.b == 0.0 || p.c == 0.0 || !(p.d > 0.0) || !std::isfinite(p.a) ||
      !std::isfinite(p.b) || !std::isfinite(p.c) || !std::isfinite(p.d)) {
    throw std::domain_error("solve_log_linear: requires b != 0, c != 0, d > 0");
  }
  const double arg = (p.c * p.d / p.b) * std::exp(p.a * p.c / p.b);
  const double w = lambert_w(p.branch, arg).value;
  const double x = w / p.c - p.a / p.b;
  if (!(p.a + p.b * x > 0.0)) {
    throw std::domain_error(
        "solve_log_linear: a + b*x is not positive at the solution");
  }
  return x;
}

}  // namespace primew
