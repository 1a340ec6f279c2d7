#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mfsp/arith.hpp"
#include "mfsp/congruence.hpp"

namespace mfsp {

struct SieveEstimate {
  std::uint64_t x = 0;
  Natural modulus;        // M'
  double y = 0;           // sifting level x^alpha
  unsigned k = 0;
  std::uint64_t pi_x = 0;
  double main_term = 0;
  std::uint64_t observed = 0;
  double normalized = 0;  // observed * (log x)^(k+1) / x
};

/// observed = #{p <= x : p = N (mod M'), P-(delta(p)) > x^alpha}. The
/// squarefree condition is deliberately not applied here.
std::vector<SieveEstimate> rough_count(const CongruenceSystem& system,
                                       const std::vector<std::uint64_t>& x_points, double alpha);

/// Brute-force count of residues a mod d with gcd(a, d) = 1 and
/// (a+1)...(a+k) = 0 (mod d).
std::uint64_t g_of_d(std::uint64_t d, unsigned k);

/// k^omega(d).
std::uint64_t g_closed_form(const FactoredInteger& d, unsigned k);

struct GdCheck {
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  std::optional<std::uint64_t> first_mismatch;
};

/// Compares g_of_d with k^omega(d) on every squarefree d <= dmax with P-(d) > k+1.
GdCheck check_g_closed_form(std::uint64_t dmax, unsigned k);

/// pi(x)/phi(M') * prod over P+(M') < p <= y of (1 - k/(p-1)).
double main_term_estimate(std::uint64_t x, const FactoredInteger& modulus, double y, unsigned k);
double main_term_from_pi(std::uint64_t pi_x, const FactoredInteger& modulus, double y, unsigned k);

/// max over reduced b mod q of |pi(x; q, b) - pi(x)/phi(q)|.
double bv_error(std::uint64_t q, std::uint64_t x);

struct SquarefullExclusion {
  std::uint64_t count = 0;        // class primes with P-(delta) > x^alpha, delta not squarefree
  double bound_ratio = 0;         // count / x^(1-alpha)
  double comparison_value = 0;    // (x+k) * sum over primes x^alpha < q <= 10^6 of 1/q^2
};

SquarefullExclusion squarefull_exclusion(const CongruenceSystem& system, std::uint64_t x,
                                         double alpha);

}  // namespace mfsp
