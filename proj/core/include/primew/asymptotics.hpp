#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "primew/prime_table.hpp"

namespace primew {

/// One row of a convergence table: sieve truth against one or more estimates,
/// keyed by estimator id ("x_over_w", "basic", "refined", "cc1", "cc2", "cc3").
/// ratio is truth/estimate; rel_error is |estimate - truth|/truth.
struct ConvergenceRow {
  std::int64_t index = 0;
  std::int64_t truth = 0;
  std::map<std::string, double> estimates;
  std::map<std::string, double> ratios;
  std::map<std::string, double> rel_error;
};

/// pi(x) against x/W(x) at the given points (each in [2, limit]). The ratio
/// column is pi(x) W(x) / x, which stays below 1 and creeps toward it.
std::vector<ConvergenceRow> pi_ratio_table(const PrimeTable& table,
                                           std::span<const std::int64_t> points);

enum class PnVariant {
  basic,    ///< -n W_{-1}(-1/n), needs n >= 3
  refined,  ///< -n W_{-1}(-e/n), needs n >= 8
};

/// W_{-1}-based estimate of the n'th prime.
double pn_estimate(std::uint64_t n, PnVariant variant);

/// Truncated log expansion of p_n: n ln n (1 term), n(ln n + ln ln n)
/// (2 terms), n(ln n + ln ln n - 1) (3 terms). Requires n >= 2 and
/// terms in {1, 2, 3}.
double cesaro_cipolla(std::uint64_t n, int terms);

/// Side-by-side comparison of both W estimates and the 1/2/3-term expansions
/// against true p_n. Points must be >= 8 so every estimator is defined.
std::vector<ConvergenceRow> expansion_error_report(
    const PrimeTable& table, std::span<const std::int64_t> points);

}  // namespace primew
