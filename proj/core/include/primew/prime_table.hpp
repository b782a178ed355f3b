#pragma once

#include <cstdint>
#include <vector>

namespace primew {

/// Immutable product of a segmented Eratosthenes sieve.
///
/// Stores primality of odd numbers up to the build limit as a bitset plus a
/// per-word prefix-count index, so pi(x) lookups are O(1) and nth_prime is a
/// binary search. Construction is single-threaded; afterwards the table is
/// immutable and safe to share across readers without synchronization.
class PrimeTable {
 public:
  static constexpr std::uint64_t kDefaultMemoryCeiling = 1'000'000'000;

  /// Sieves [2, limit]. Requires limit >= 2. Throws std::length_error when
  /// limit exceeds the memory ceiling.
  static PrimeTable build(std::uint64_t limit,
                          std::uint64_t memory_ceiling = kDefaultMemoryCeiling);

  std::uint64_t limit() const noexcept { return limit_; }
  std::uint64_t prime_count() const noexcept { return prime_count_; }

  /// Number of primes <= floor(x). Requires 0 <= x <= limit (real argument;
  /// the classical bounds are stated for real x). Throws std::out_of_range
  /// beyond the covered range.
  std::uint64_t pi(double x) const;

  /// The n'th prime, 1-based (nth_prime(1) == 2). Requires
  /// 1 <= n <= prime_count(). Satisfies pi(nth_prime(n)) == n.
  std::uint64_t nth_prime(std::uint64_t n) const;

 private:
  PrimeTable() = default;

  std::uint64_t limit_ = 0;
  std::uint64_t prime_count_ = 0;
  std::vector<std::uint64_t> odd_bits_;  // bit i set <=> 2i+1 is prime
  std::vector<std::uint64_t> rank_;      // set bits in odd_bits_[0, w)
};

}  // namespace primew
