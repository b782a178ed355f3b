#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "primew/lambert_w.hpp"

using namespace primew;

namespace {

constexpr double kE = 2.71828182845904523536;
constexpr double kInvE = 0.36787944117144232159552377016146086744581113103176804;

// Log-spaced offsets from the branch point covering [-1/e + 1e-12, cap].
std::vector<double> branch_offset_grid(double cap, int n) {
  std::vector<double> xs;
  xs.reserve(n);
  const double lo = 1e-12;
  const double hi = cap + kInvE;
  for (int i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / (n - 1);
    xs.push_back(lo * std::pow(hi / lo, t) - kInvE);
  }
  return xs;
}

}  // namespace

TEST_CASE("w0 exact anchor points") {
  CHECK(w0(0.0).value == 0.0);
  CHECK(w0(kE).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w0(-kInvE).value == -1.0);
  CHECK(w0(-kInvE).iterations == 0);
}

TEST_CASE("w0 matches the bisection oracle") {
  // Frozen from the oracle: w * e^w = 1 has the root below.
  CHECK(w0(1.0).value == doctest::Approx(0.56714329040978387).epsilon(1e-14));
  for (double x : {0.01, 0.3, 1.0, 2.0, 5.0, 100.0, 1e6, 1e12, -0.1, -0.3, -0.36}) {
    const double ref = oracles::bisect_w0(x);
    CHECK(std::abs(w0(x).value - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("wm1 matches the bisection oracle") {
  CHECK(wm1(-kInvE).value == -1.0);
  CHECK(wm1(-0.25).value == doctest::Approx(-2.1532923641103496).epsilon(1e-14));
  CHECK(wm1(-0.1).value == doctest::Approx(-3.5771520639572972).epsilon(1e-14));
  for (double x : {-0.36, -0.3, -0.25, -0.1, -0.01, -1e-6, -1e-12}) {
    const double ref = oracles::bisect_wm1(x);
    CHECK(std::abs(wm1(x).value - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("domain errors instead of NaNs") {
  CHECK_THROWS_AS(w0(-0.4), std::domain_error);
  CHECK_THROWS_AS(w0(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(wm1(0.0), std::domain_error);
  CHECK_THROWS_AS(wm1(0.5), std::domain_error);
  CHECK_THROWS_AS(wm1(-0.5), std::domain_error);
  // Just below -1/e within the clamp tolerance is absorbed.
  CHECK(w0(-kInvE - 1e-16).value == -1.0);
  CHECK(wm1(-kInvE - 1e-16).value == -1.0);
}

TEST_CASE("defining identity and branch separation over both domains") {
  for (double x : branch_offset_grid(1e12, 10000)) {
    const WResult r = w0(x);
    CHECK(std::abs(r.residual) <= 1e-12 * std::max(1.0, std::abs(x)));
    CHECK(r.value >= -1.0);
    CHECK(r.iterations <= 10);
  }
  for (double x : branch_offset_grid(-1e-12, 10000)) {
    const WResult r = wm1(x);
    CHECK(std::abs(r.residual) <= 1e-12 * std::max(1.0, std::abs(x)));
    CHECK(r.value <= -1.0);
    CHECK(r.iterations <= 10);
  }
}

TEST_CASE("exponential form x/W = e^W on the positive axis") {
  std::mt19937_64 rng(20240901);
  std::uniform_real_distribution<double> log_x(-30.0, 27.6);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::exp(log_x(rng));
    const double w = w0(x).value;
    const double ew = std::exp(w);
    CHECK(std::abs(x / w - ew) <= 1e-10 * ew);
  }
}

TEST_CASE("strict monotonicity on sorted samples") {
  auto xs = branch_offset_grid(1e12, 10000);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    CHECK(w0(xs[i]).value > w0(xs[i - 1]).value);
  }
  auto ys = branch_offset_grid(-1e-12, 10000);
  for (std::size_t i = 1; i < ys.size(); ++i) {
    CHECK(wm1(ys[i]).value < wm1(ys[i - 1]).value);
  }
}

TEST_CASE("asymptotic estimate values and domains") {
  CHECK(asymptotic_estimate(Branch::principal, std::exp(kE)) ==
        doctest::Approx(kE - 1.0).epsilon(1e-14));
  CHECK(asymptotic_estimate(Branch::minus_one, -kInvE) ==
        doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(asymptotic_estimate(Branch::principal, 1e6) ==
        doctest::Approx(11.189718643488263).epsilon(1e-14));
  CHECK_THROWS_AS(asymptotic_estimate(Branch::principal, 1.0), std::domain_error);
  CHECK_THROWS_AS(asymptotic_estimate(Branch::principal, 0.5), std::domain_error);
  CHECK_THROWS_AS(asymptotic_estimate(Branch::minus_one, 0.0), std::domain_error);
  CHECK_THROWS_AS(asymptotic_estimate(Branch::minus_one, -0.5), std::domain_error);
}

TEST_CASE("asymptotic estimate converges along each branch") {
  double prev = 1e300;
  for (int k = 3; k <= 12; ++k) {
    const double x = std::pow(10.0, k);
    const double gap = std::abs(asymptotic_estimate(Branch::principal, x) -
                                w0(x).value);
    CHECK(gap < prev);
    prev = gap;
  }
  prev = 1e300;
  for (int k = 3; k <= 12; ++k) {
    const double x = -std::pow(10.0, -k);
    const double gap = std::abs(asymptotic_estimate(Branch::minus_one, x) -
                                wm1(x).value);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("solve_log_linear worked examples") {
  // ln x + x = 0 has the same root as w e^w = 1.
  CHECK(solve_log_linear({0.0, 1.0, 1.0, 1.0, Branch::principal}) ==
        doctest::Approx(0.56714329040978387).epsilon(1e-13));
  // ln x + x = 1 is solved by x = 1.
  CHECK(solve_log_linear({0.0, 1.0, 1.0, kE, Branch::principal}) ==
        doctest::Approx(1.0).epsilon(1e-13));
  // ln(1 + x) + x = 1; check by back-substitution.
  const double x = solve_log_linear({1.0, 1.0, 1.0, kE, Branch::principal});
  CHECK(x == doctest::Approx(0.55714559899761142).epsilon(1e-13));
  CHECK(std::abs(std::log1p(x) + x - 1.0) <= 1e-10);
}

TEST_CASE("solve_log_linear rejects degenerate problems") {
  CHECK_THROWS_AS(solve_log_linear({0.0, 0.0, 1.0, 1.0, Branch::principal}),
                  std::domain_error);
  CHECK_THROWS_AS(solve_log_linear({0.0, 1.0, 0.0, 1.0, Branch::principal}),
                  std::domain_error);
  CHECK_THROWS_AS(solve_log_linear({0.0, 1.0, 1.0, -1.0, Branch::principal}),
                  std::domain_error);
  // W argument -2 is outside both real branches.
  CHECK_THROWS_AS(solve_log_linear({0.0, 1.0, -1.0, 2.0, Branch::minus_one}),
                  std::domain_error);
}

TEST_CASE("solve_log_linear randomized back-substitution") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> coeff(0.1, 3.0);
  std::uniform_real_distribution<double> offset(-2.0, 2.0);
  std::uniform_real_distribution<double> rhs(0.1, 10.0);
  std::bernoulli_distribution flip(0.5);
  int solved = 0;
  while (solved < 1000) {
    LogLinearProblem p;
    p.a = offset(rng);
    p.b = flip(rng) ? coeff(rng) : -coeff(rng);
    p.c = flip(rng) ? coeff(rng) : -coeff(rng);
    p.d = rhs(rng);
    p.branch = flip(rng) ? Branch::principal : Branch::minus_one;
    const double arg = (p.c * p.d / p.b) * std::exp(p.a * p.c / p.b);
    // Stay clear of the ill-conditioned slivers: the branch point, and (on the
    // principal branch) W arguments near 0 where a + b*x vanishes and the
    // log in the residual loses all precision.
    if (p.branch == Branch::principal) {
      if (!(arg > -kInvE + 1e-4 && std::abs(arg) >= 3e-3)) continue;
    } else {
      if (!(arg > -kInvE + 1e-4 && arg < -1e-8)) continue;
    }
    double x;
    try {
      x = solve_log_linear(p);
    } catch (const std::domain_error&) {
      continue;  // a + b*x <= 0: equation has no solution on this branch
    }
    ++solved;
    CHECK(std::abs(std::log(p.a + p.b * x) + p.c * x - std::log(p.d)) <= 1e-10);
  }
}
