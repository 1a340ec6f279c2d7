#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mfsp {

/// All primes <= limit by a plain sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// Shared table of the primes below 10^6 (computed once, immutable afterwards).
std::span<const std::uint64_t> small_prime_table();

/// Calls fn(p) for every prime lo <= p <= hi in ascending order.
/// Uses a segmented sieve, so memory stays O(sqrt(hi) + segment).
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    const std::function<void(std::uint64_t)>& fn);

/// Number of primes in [lo, hi].
std::uint64_t count_primes(std::uint64_t lo, std::uint64_t hi);

/// Ascending prime iterator starting after a given value, unbounded in
/// principle; it sieves one block at a time on demand.
class PrimeCursor {
 public:
  explicit PrimeCursor(std::uint64_t after = 0);
  std::uint64_t next();

 private:
  void refill();

  std::uint64_t block_lo_;
  std::vector<std::uint64_t> block_;
  std::size_t pos_ = 0;
};

/// pi(x) with a cache of the largest point counted so far; increasing
/// queries extend the count incrementally.
class PrimeCounter {
 public:
  std::uint64_t operator()(std::uint64_t x);

 private:
  std::uint64_t counted_to_ = 1;
  std::uint64_t count_ = 0;
};

struct SmallFactor {
  std::uint64_t prime;
  std::uint32_t exponent;
};

/// Window-local factorisation of every integer in [lo, hi): each entry is
/// sieved by the primes up to sqrt(hi) and whatever cofactor survives is a
/// single large prime.
class FactorWindow {
 public:
  static constexpr std::size_t kMaxFactors = 16;

  /// sieving_primes must contain every prime <= sqrt(hi - 1); lo >= 1.
  FactorWindow(std::span<const std::uint64_t> sieving_primes);

  void sieve(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }

  /// Factors of n (lo <= n < hi), ascending; empty for n = 1.
  std::span<const SmallFactor> factors(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;

 private:
  std::span<const std::uint64_t> sieving_primes_;
  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
  std::vector<std::uint64_t> rem_;
  std::vector<std::uint8_t> count_;
  std::vector<std::array<SmallFactor, kMaxFactors>> factors_;
};

}  // namespace mfsp
