#include "primew/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "primew/lambert_w.hpp"

namespace primew {
namespace {

constexpr double kE = 2.71828182845904523536;

void fill(ConvergenceRow& row, const std::string& id, double estimate) {
  row.estimates[id] = estimate;
  row.ratios[id] = static_cast<double>(row.truth) / estimate;
  row.rel_error[id] =
      std::abs(estimate - static_cast<double>(row.truth)) /
      static_cast<double>(row.truth);
}

std::vector<std::int64_t> sorted_points(std::span<const std::int64_t> points) {
  std::vector<std::int64_t> out(points.begin(), points.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<ConvergenceRow> pi_ratio_table(const PrimeTable& table,
                                           std::span<const std::int64_t> points) {
  std::vector<ConvergenceRow> rows;
  for (const std::int64_t x : sorted_points(points)) {
    if (x < 2) throw std::domain_error("pi_ratio_table: points must be >= 2");
    if (static_cast<std::uint64_t>(x) > table.limit()) {
      throw std::out_of_range("pi_ratio_table: point beyond table limit");
    }
    ConvergenceRow row;
    row.index = x;
    row.truth = static_cast<std::int64_t>(table.pi(static_cast<double>(x)));
    const double w = w0(static_cast<double>(x)).value;
    fill(row, "x_over_w", static_cast<double>(x) / w);
    rows.push_back(std::move(row));
  }
  return rows;
}

double pn_estimate(std::uint64_t n, PnVariant variant) {
  if (variant == PnVariant::basic) {
    if (n < 3) throw std::domain_error("pn_estimate[basic]: requires n >= 3");
    return -static_cast<double>(n) * wm1(-1.0 / static_cast<double>(n)).value;
  }
  if (n < 8) throw std::domain_error("pn_estimate[refined]: requires n >= 8");
  return -static_cast<double>(n) * wm1(-kE / static_cast<double>(n)).value;
}

double cesaro_cipolla(std::uint64_t n, int terms) {
  if (terms < 1 || terms > 3) {
    throw std::invalid_argument("cesaro_cipolla: terms must be 1, 2 or 3");
  }
  if (n < 2) throw std::domain_error("cesaro_cipolla: requires n >= 2");
  const double nn = static_cast<double>(n);
  const double l = std::log(nn);
  if (terms == 1) return nn * l;
  const double two_terms = nn * (l + std::log(l));
  // Subtracting n afterwards keeps cc2 - cc3 == n exact in floating point.
  return terms == 2 ? two_terms : two_terms - nn;
}

std::vector<ConvergenceRow> expansion_error_report(
    const PrimeTable& table, std::span<const std::int64_t> points) {
  std::vector<ConvergenceRow> rows;
  for (const std::int64_t n : sorted_points(points)) {
    if (n < 8) {
      throw std::domain_error(
          "expansion_error_report: points must be >= 8 so all estimators exist");
    }
    if (static_cast<std::uint64_t>(n) > table.prime_count()) {
      throw std::out_of_range("expansion_error_report: point beyond prime count");
    }
    const auto un = static_cast<std::uint64_t>(n);
    ConvergenceRow row;
    row.index = n;
    row.truth = static_cast<std::int64_t>(table.nth_prime(un));
    fill(row, "basic", pn_estimate(un, PnVariant::basic));
    fill(row, "refined", pn_estimate(un, PnVariant::refined));
    fill(row, "cc1", cesaro_cipolla(un, 1));
    fill(row, "cc2", cesaro_cipolla(un, 2));
    fill(row, "cc3", cesaro_cipolla(un, 3));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace primew
