#pragma once

namespace primew {

/// Real branches of the Lambert W function, the inverse of w -> w*e^w.
///
/// The principal branch W_0 is defined on [-1/e, inf) with W_0 >= -1.
/// The second real branch W_{-1} is defined on [-1/e, 0) with W_{-1} <= -1.
/// Both meet at the branch point x = -1/e where W = -1.
enum class Branch { principal, minus_one };

/// A W evaluation together with its accuracy certificate.
struct WResult {
  double value = 0.0;
  double residual = 0.0;  ///< value * exp(value) - x at the returned value
  int iterations = 0;     ///< Halley steps taken
};

/// -1/e, the branch point shared by both real branches.
inline constexpr double branch_point_x =
    -0.36787944117144232159552377016146086744581113103176804;

/// Principal branch W_0. Requires x >= -1/e; inputs within 1e-15 below the
/// branch point are clamped onto it. Guarantees
/// |residual| <= 1e-12 * max(1, |x|) and value >= -1.
WResult w0(double x);

/// Second real branch W_{-1}. Requires -1/e <= x < 0, with the same clamp
/// tolerance at the branch point. Guarantees the residual bound above and
/// value <= -1.
WResult wm1(double x);

/// Branch dispatch over w0 / wm1.
WResult lambert_w(Branch branch, double x);

/// Two-term asymptotic estimate of a branch:
///   principal: ln x - ln ln x           (x > 1, accurate as x -> inf)
///   minus_one: ln(-x) - ln(-ln(-x))     (-1/e <= x < 0, accurate as x -> 0-)
double asymptotic_estimate(Branch branch, double x);

/// Parameters of the log-linear equation ln(a + b*x) + c*x = ln d.
struct LogLinearProblem {
  double a = 0.0;
  double b = 1.0;  ///< must be nonzero
  double c = 1.0;  ///< must be nonzero
  double d = 1.0;  ///< must be positive
  Branch branch = Branch::principal;
};

/// Solves ln(a + b*x) + c*x = ln d in closed form,
///   x = W((c*d/b) * exp(a*c/b)) / c - a/b,
/// using the selected branch. Throws std::domain_error when the W argument
/// leaves the branch domain or when a + b*x is not positive at the solution.
double solve_log_linear(const LogLinearProblem& p);

}  // namespace primew
