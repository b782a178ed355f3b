#include "primew/prime_table.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace primew {
namespace {

// Odd numbers per sieve segment; 1 << 18 odds spans 512K integers and the
// segment bitmap stays inside L2.
constexpr std::uint64_t kSegmentOdds = 1ull << 18;

std::vector<std::uint32_t> base_primes(std::uint64_t root) {
  std::vector<bool> is_prime(root + 1, true);
  std::vector<std::uint32_t> out;
  for (std::uint64_t p = 3; p <= root; p += 2) {
    if (!is_prime[p]) continue;
    out.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t q = p * p; q <= root; q += 2 * p) is_prime[q] = false;
  }
  return out;
}

}  // namespace

PrimeTable PrimeTable::build(std::uint64_t limit, std::uint64_t memory_ceiling) {
  if (limit < 2) {
    throw std::invalid_argument("PrimeTable::build: limit must be >= 2");
  }
  if (limit > memory_ceiling) {
    throw std::length_error("PrimeTable::build: limit " + std::to_string(limit) +
                            " exceeds memory ceiling " +
                            std::to_string(memory_ceiling));
  }

  PrimeTable t;
  t.limit_ = limit;

  const std::uint64_t odd_count = (limit + 1) / 2;  // odds 1, 3, ..., <= limit
  const std::uint64_t words = (odd_count + 63) / 64;
  t.odd_bits_.assign(words, ~0ull);
  // Clear padding past the last odd <= limit.
  if (odd_count % 64 != 0) {
    t.odd_bits_.back() = (1ull << (odd_count % 64)) - 1;
  }
  t.odd_bits_[0] &= ~1ull;  // 1 is not prime

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  const auto primes = base_primes(std::min(root, limit));

  for (std::uint64_t seg_lo = 0; seg_lo < odd_count; seg_lo += kSegmentOdds) {
    const std::uint64_t seg_hi = std::min(seg_lo + kSegmentOdds, odd_count);
    const std::uint64_t lo_value = 2 * seg_lo + 1;
    for (const std::uint64_t p : primes) {
      std::uint64_t start = p * p;
      if (start > limit) break;
      if (start < lo_value) {
        std::uint64_t k = (lo_value + p - 1) / p;
        if (k % 2 == 0) ++k;  // odd multiples only
        start = std::max(start, k * p);
      }
      for (std::uint64_t i = start / 2; i < seg_hi; i += p) {
        t.odd_bits_[i >> 6] &= ~(1ull << (i & 63));
      }
    }
  }

  t.rank_.resize(words + 1);
  t.rank_[0] = 0;
  for (std::uint64_t w = 0; w < words; ++w) {
    t.rank_[w + 1] = t.rank_[w] + std::popcount(t.odd_bits_[w]);
  }
  t.prime_count_ = 1 + t.rank_[words];  // 2 plus the odd primes
  return t;
}

std::uint64_t PrimeTable::pi(double x) const {
  if (!(x >= 0.0) || x > static_cast<double>(limit_)) {
    throw std::out_of_range("PrimeTable::pi: argument outside [0, limit]");
  }
  const auto v = static_cast<std::uint64_t>(std::floor(x));
  if (v < 2) return 0;
  if (v == 2) return 1;
  const std::uint64_t i = (v - 1) / 2;  // index of largest odd <= v
  const std::uint64_t word = i >> 6;
  const std::uint64_t mask = (i & 63) == 63 ? ~0ull : (1ull << ((i & 63) + 1)) - 1;
  return 1 + rank_[word] + std::popcount(odd_bits_[word] & mask);
}

std::uint64_t PrimeTable::nth_prime(std::uint64_t n) const {
  if (n < 1 || n > prime_count_) {
    throw std::out_of_range("PrimeTable::nth_prime: n outside [1, prime_count]");
  }
  if (n == 1) return 2;
  const std::uint64_t k = n - 1;  // k'th odd prime, 1-based
  const auto it = std::upper_bound(rank_.begin(), rank_.end(), k - 1);
  const std::uint64_t word = static_cast<std::uint64_t>(it - rank_.begin()) - 1;
  std::uint64_t remaining = k - rank_[word];  // >= 1, select within word
  std::uint64_t bits = odd_bits_[word];
  while (--remaining > 0) bits &= bits - 1;
  const std::uint64_t i = word * 64 + std::countr_zero(bits);
  return 2 * i + 1;
}

}  // namespace primew
