#include "mfsp/arith.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mfsp/error.hpp"
#include "mfsp/primes.hpp"

namespace mfsp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::unsupported_input: return "unsupported-input";
    case ErrorKind::coprimality_violation: return "coprimality-violation";
    case ErrorKind::positivity_violation: return "positivity-violation";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::class_mismatch: return "class-mismatch";
    case ErrorKind::box_violation: return "box-violation";
    case ErrorKind::class_membership: return "class-membership";
    case ErrorKind::budget_exhausted: return "budget-exhausted";
    case ErrorKind::precision_exhausted: return "precision-exhausted";
  }
  return "unknown";
}

Natural to_natural(std::uint64_t n) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return Natural(static_cast<unsigned long>(n));
}

bool fits_u64(const Natural& n) { return sgn(n) >= 0 && n.fits_ulong_p(); }

std::uint64_t to_u64(const Natural& n) {
  if (!fits_u64(n))
    throw Error(ErrorKind::unsupported_input, "value " + n.get_str() + " exceeds 64 bits");
  return n.get_ui();
}

Natural parse_natural(std::string_view text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos)
    throw Error(ErrorKind::precondition, "not a natural number: '" + std::string(text) + "'");
  return Natural(std::string(text), 10);
}

// ---------------------------------------------------------------------------
// FactoredInteger

FactoredInteger FactoredInteger::from_factors(std::vector<PrimePower> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  FactoredInteger out;
  for (auto& f : factors) {
    if (f.exponent == 0) continue;
    if (!out.factors_.empty() && out.factors_.back().prime == f.prime)
      out.factors_.back().exponent += f.exponent;
    else
      out.factors_.push_back(std::move(f));
  }
  for (const auto& f : out.factors_) {
    Natural pe;
    mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    out.value_ *= pe;
  }
  return out;
}

FactoredInteger FactoredInteger::of_prime(const Natural& p) {
  return from_factors({PrimePower{p, 1}});
}

bool FactoredInteger::divisible_by(const Natural& prime) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const PrimePower& f) { return f.prime == prime; });
}

bool FactoredInteger::validate() const {
  Natural product = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.exponent < 1 || !is_prime(f.prime)) return false;
    if (i > 0 && !(factors_[i - 1].prime < f.prime)) return false;
    Natural pe;
    mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    product *= pe;
  }
  return product == value_ && (value_ == 1) == factors_.empty();
}

std::string FactoredInteger::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << '*';
    os << factors_[i].prime.get_str();
    if (factors_[i].exponent > 1) os << '^' << factors_[i].exponent;
  }
  return os.str();
}

FactoredInteger operator*(const FactoredInteger& a, const FactoredInteger& b) {
  std::vector<PrimePower> merged = a.factors_;
  merged.insert(merged.end(), b.factors_.begin(), b.factors_.end());
  return FactoredInteger::from_factors(std::move(merged));
}

// ---------------------------------------------------------------------------
// Primality

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  if (n < 37 * 37) return true;
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Witness set of Jim Sinclair; deterministic for all n < 2^64.
  for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL,
                          1795265022ULL}) {
    a %= n;
    if (a == 0) continue;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const Natural& n) {
  if (sgn(n) <= 0) return false;
  if (n.fits_ulong_p()) return is_prime_u64(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

// ---------------------------------------------------------------------------
// Factorisation

namespace {

std::uint64_t rho_u64(std::uint64_t n, std::uint64_t seed) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = seed;; ++c) {
    std::uint64_t y = (seed * 7 + 2) % n, g = 1, q = 1, x = 0, ys = 0;
    const std::uint64_t m = 128;
    auto step = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = step(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

Natural rho_mpz(const Natural& n, std::uint64_t seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = seed;; ++c) {
    Natural y = (seed * 7 + 2), g = 1, q = 1, x, ys, diff;
    const unsigned long m = 128;
    auto step = [&](Natural& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    for (unsigned long r = 1; g == 1; r <<= 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      for (unsigned long k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          step(y);
          diff = abs(x - y);
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
      }
    }
    if (g == n) {
      do {
        step(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

// Splits a cofactor with no prime factor below the trial bound into primes.
void split_cofactor(const Natural& n, const FactorizeOptions& options,
                    std::vector<PrimePower>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back({n, 1});
    return;
  }
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > kMaxCompositeBits)
    throw Error(ErrorKind::unsupported_input,
                "composite cofactor " + n.get_str() + " exceeds the supported magnitude");
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned long e = bits; e >= 2; --e) {
      Natural root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e)) {
        std::vector<PrimePower> inner;
        split_cofactor(root, options, inner);
        for (auto& f : inner) out.push_back({f.prime, f.exponent * static_cast<unsigned>(e)});
        return;
      }
    }
  }
  Natural d = n.fits_ulong_p() ? to_natural(rho_u64(n.get_ui(), options.rho_seed))
                               : rho_mpz(n, options.rho_seed);
  split_cofactor(d, options, out);
  split_cofactor(Natural(n / d), options, out);
}

}  // namespace

FactoredInteger factorize(const Natural& n, const FactorizeOptions& options) {
  if (sgn(n) <= 0) throw Error(ErrorKind::unsupported_input, "factorize requires n >= 1");
  std::vector<PrimePower> out;
  Natural rem = n;
  for (std::uint64_t p : small_prime_table()) {
    if (p > options.trial_bound) break;
    if (mpz_cmp_ui(rem.get_mpz_t(), p * p) < 0) break;
    if (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(rem.get_mpz_t(), p));
      out.push_back({to_natural(p), e});
    }
  }
  split_cofactor(rem, options, out);
  return FactoredInteger::from_factors(std::move(out));
}

FactoredInteger factorize(std::uint64_t n) { return factorize(to_natural(n)); }

// ---------------------------------------------------------------------------

std::vector<Natural> primes_in_ap(const Natural& residue, const Natural& modulus,
                                  const Natural& lo, const Natural& hi) {
  if (sgn(modulus) <= 0 || sgn(residue) < 0 || residue >= modulus)
    throw Error(ErrorKind::precondition, "primes_in_ap requires 0 <= N < M");
  std::vector<Natural> out;
  if (hi < lo) return out;
  // First term >= lo of the progression.
  Natural start = lo - residue;
  if (sgn(start) <= 0) {
    start = residue;
  } else {
    Natural steps;
    mpz_cdiv_q(steps.get_mpz_t(), start.get_mpz_t(), modulus.get_mpz_t());
    start = residue + steps * modulus;
  }
  if (start > hi) return out;
  if (fits_u64(hi) && fits_u64(modulus)) {
    const std::uint64_t m = modulus.get_ui(), h = hi.get_ui();
    for (std::uint64_t n = start.get_ui(); n <= h; n += m) {
      if (is_prime_u64(n)) out.push_back(to_natural(n));
      if (h - n < m) break;
    }
    return out;
  }
  for (Natural n = start; n <= hi; n += modulus)
    if (is_prime(n)) out.push_back(n);
  return out;
}

CrtSolution crt(std::span<const Congruence> congruences) {
  for (std::size_t i = 0; i < congruences.size(); ++i) {
    const auto& c = congruences[i];
    if (sgn(c.modulus) <= 0 || sgn(c.residue) < 0 || c.residue >= c.modulus)
      throw Error(ErrorKind::precondition,
                  "congruence " + std::to_string(i) + " needs 0 <= r < m");
    for (std::size_t j = 0; j < i; ++j) {
      if (gcd(congruences[j].modulus, c.modulus) != 1)
        throw Error(ErrorKind::coprimality_violation,
                    "moduli " + congruences[j].modulus.get_str() + " and " +
                        c.modulus.get_str() + " (congruences " + std::to_string(j) + ", " +
                        std::to_string(i) + ") are not coprime");
    }
  }
  Natural n = 0, m = 1;
  for (const auto& c : congruences) {
    // n + m*t = r (mod c.modulus)  =>  t = (r - n) * m^{-1}
    Natural inv, t;
    mpz_invert(inv.get_mpz_t(), m.get_mpz_t(), c.modulus.get_mpz_t());
    if (c.modulus == 1) inv = 0;
    t = (c.residue - n) * inv;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), c.modulus.get_mpz_t());
    n += m * t;
    m *= c.modulus;
  }
  return {n, m};
}

RoughSmooth rough_smooth_split(const FactoredInteger& n, double y) {
  std::vector<PrimePower> smooth, rough;
  for (const auto& f : n.factors()) {
    if (mpz_cmp_d(f.prime.get_mpz_t(), y) <= 0)
      smooth.push_back(f);
    else
      rough.push_back(f);
  }
  return {FactoredInteger::from_factors(std::move(smooth)),
          FactoredInteger::from_factors(std::move(rough))};
}

bool PrimeOrInfinity::exceeds(double bound) const {
  if (is_infinite()) return true;
  return mpz_cmp_d(value_->get_mpz_t(), bound) > 0;
}

std::string PrimeOrInfinity::to_string() const {
  return is_infinite() ? "inf" : value_->get_str();
}

PrimeOrInfinity p_minus(const FactoredInteger& n) {
  if (n.is_one()) return PrimeOrInfinity::infinity();
  return PrimeOrInfinity::prime(n.factors().front().prime);
}

Natural p_plus(const FactoredInteger& n) {
  if (n.is_one()) return 1;
  return n.factors().back().prime;
}

bool is_squarefree(const FactoredInteger& n) {
  return std::all_of(n.factors().begin(), n.factors().end(),
                     [](const PrimePower& f) { return f.exponent == 1; });
}

std::uint64_t prime_count(std::uint64_t x) { return count_primes(2, x); }

Natural totient(const FactoredInteger& n) {
  Natural phi = 1;
  for (const auto& f : n.factors()) {
    Natural pe;
    mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent - 1);
    phi *= pe * (f.prime - 1);
  }
  return phi;
}

}  // namespace mfsp
