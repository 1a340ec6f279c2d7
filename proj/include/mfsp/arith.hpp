#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace mfsp {

using Natural = mpz_class;

Natural to_natural(std::uint64_t n);
/// Throws Error(unsupported_input) when n does not fit in 64 bits.
std::uint64_t to_u64(const Natural& n);
bool fits_u64(const Natural& n);

/// Decimal digits only (no sign, no base prefix); throws precondition otherwise.
Natural parse_natural(std::string_view text);

struct PrimePower {
  Natural prime;
  unsigned exponent = 1;

  friend bool operator==(const PrimePower& a, const PrimePower& b) {
    return a.prime == b.prime && a.exponent == b.exponent;
  }
};

/// A natural number together with its canonical factorisation: primes
/// strictly increasing, exponents >= 1, value 1 <=> no factors.
class FactoredInteger {
 public:
  FactoredInteger() = default;

  /// Sorts and merges the given prime powers. The primes are trusted;
  /// call validate() to re-check them.
  static FactoredInteger from_factors(std::vector<PrimePower> factors);
  static FactoredInteger of_prime(const Natural& p);

  const Natural& value() const { return value_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  std::size_t distinct_primes() const { return factors_.size(); }
  bool divisible_by(const Natural& prime) const;

  /// Re-derives every invariant (product, ordering, primality).
  bool validate() const;

  /// "2^2*3*5"; "1" for the empty product.
  std::string to_string() const;

  friend FactoredInteger operator*(const FactoredInteger& a, const FactoredInteger& b);
  friend bool operator==(const FactoredInteger& a, const FactoredInteger& b) {
    return a.value_ == b.value_ && a.factors_ == b.factors_;
  }

 private:
  Natural value_ = 1;
  std::vector<PrimePower> factors_;
};

struct FactorizeOptions {
  std::uint64_t trial_bound = 1'000'000;
  std::uint64_t rho_seed = 1;
};

/// Composite cofactors left after trial division may have at most this many
/// bits; anything larger is rejected as unsupported input.
inline constexpr unsigned kMaxCompositeBits = 128;

FactoredInteger factorize(const Natural& n, const FactorizeOptions& options = {});
FactoredInteger factorize(std::uint64_t n);

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);
/// Exact below 2^64; above that, Baillie-PSW through GMP.
bool is_prime(const Natural& n);

/// Primes p with lo <= p <= hi and p = residue (mod modulus), ascending.
std::vector<Natural> primes_in_ap(const Natural& residue, const Natural& modulus,
                                  const Natural& lo, const Natural& hi);

struct Congruence {
  Natural residue;
  Natural modulus;
};

struct CrtSolution {
  Natural residue;
  Natural modulus;
};

/// Joint solution of pairwise-coprime congruences.
CrtSolution crt(std::span<const Congruence> congruences);

struct RoughSmooth {
  FactoredInteger smooth;
  FactoredInteger rough;
};

/// smooth collects the primes <= y, rough the primes > y.
RoughSmooth rough_smooth_split(const FactoredInteger& n, double y);

/// A prime, or the +infinity that P^-(1) takes by convention.
class PrimeOrInfinity {
 public:
  static PrimeOrInfinity infinity() { return PrimeOrInfinity(); }
  static PrimeOrInfinity prime(Natural p) { return PrimeOrInfinity(std::move(p)); }

  bool is_infinite() const { return !value_.has_value(); }
  /// Precondition: !is_infinite().
  const Natural& value() const { return *value_; }

  /// Strict comparison against a real bound; infinity exceeds everything.
  bool exceeds(double bound) const;
  std::string to_string() const;

  friend bool operator==(const PrimeOrInfinity& a, const PrimeOrInfinity& b) {
    return a.value_ == b.value_;
  }

 private:
  PrimeOrInfinity() = default;
  explicit PrimeOrInfinity(Natural p) : value_(std::move(p)) {}

  std::optional<Natural> value_;
};

PrimeOrInfinity p_minus(const FactoredInteger& n);
/// Largest prime factor; 1 for n = 1.
Natural p_plus(const FactoredInteger& n);

bool is_squarefree(const FactoredInteger& n);

std::uint64_t prime_count(std::uint64_t x);
Natural totient(const FactoredInteger& n);

}  // namespace mfsp
