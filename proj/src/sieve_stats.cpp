#include "mfsp/sieve_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mfsp/error.hpp"
#include "mfsp/primes.hpp"
#include "mfsp/scanner.hpp"

namespace mfsp {

std::vector<SieveEstimate> rough_count(const CongruenceSystem& system,
                                       const std::vector<std::uint64_t>& x_points, double alpha) {
  std::vector<double> levels;
  for (auto x : x_points) levels.push_back(sifting_level(system, x, alpha));
  if (x_points.empty()) return {};

  const std::uint64_t x_max = *std::max_element(x_points.begin(), x_points.end());
  const auto class_primes = enumerate_class_primes(system, x_max);
  const FactoredInteger modulus = system.factored_modulus();

  std::vector<std::size_t> order(x_points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return x_points[a] < x_points[b]; });

  std::vector<SieveEstimate> out(x_points.size());
  PrimeCounter pi;
  for (auto idx : order) {
    SieveEstimate& e = out[idx];
    e.x = x_points[idx];
    e.modulus = system.modulus;
    e.y = levels[idx];
    e.k = system.k;
    e.pi_x = pi(e.x);
    e.main_term = main_term_from_pi(e.pi_x, modulus, e.y, system.k);
    for (const auto& cp : class_primes)
      if (cp.p <= e.x && cp.least_delta_prime.exceeds(e.y)) ++e.observed;
    const double log_x = std::log(static_cast<double>(e.x));
    e.normalized = e.x > 1 ? static_cast<double>(e.observed) * std::pow(log_x, system.k + 1) /
                                 static_cast<double>(e.x)
                           : 0.0;
  }
  return out;
}

std::uint64_t g_of_d(std::uint64_t d, unsigned k) {
  if (d == 0) throw Error(ErrorKind::precondition, "g_of_d needs d >= 1");
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < d; ++a) {
    if (std::gcd(a, d) != 1) continue;
    std::uint64_t product = 1 % d;
    for (unsigned i = 1; i <= k; ++i)
      product = static_cast<std::uint64_t>(static_cast<unsigned __int128>(product) * ((a + i) % d) % d);
    if (product == 0) ++count;
  }
  return count;
}

std::uint64_t g_closed_form(const FactoredInteger& d, unsigned k) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < d.distinct_primes(); ++i) out *= k;
  return out;
}

GdCheck check_g_closed_form(std::uint64_t dmax, unsigned k) {
  GdCheck out;
  for (std::uint64_t d = 1; d <= dmax; ++d) {
    const FactoredInteger fd = factorize(d);
    if (!is_squarefree(fd) || !p_minus(fd).exceeds(static_cast<double>(k) + 1)) continue;
    ++out.checked;
    if (g_of_d(d, k) != g_closed_form(fd, k)) {
      ++out.mismatches;
      if (!out.first_mismatch) out.first_mismatch = d;
    }
  }
  return out;
}

double main_term_from_pi(std::uint64_t pi_x, const FactoredInteger& modulus, double y, unsigned k) {
  double term = static_cast<double>(pi_x) / totient(modulus).get_d();
  const std::uint64_t from = to_u64(p_plus(modulus)) + 1;
  if (y >= static_cast<double>(from)) {
    for_each_prime(from, static_cast<std::uint64_t>(std::floor(y)), [&](std::uint64_t p) {
      if (p - 1 <= k)
        throw Error(ErrorKind::precondition, "sieve factor 1 - k/(p-1) is not positive at p = " +
                                                 std::to_string(p));
      term *= 1.0 - static_cast<double>(k) / static_cast<double>(p - 1);
    });
  }
  return term;
}

double main_term_estimate(std::uint64_t x, const FactoredInteger& modulus, double y, unsigned k) {
  return main_term_from_pi(prime_count(x), modulus, y, k);
}

double bv_error(std::uint64_t q, std::uint64_t x) {
  if (q < 2) throw Error(ErrorKind::precondition, "bv_error needs q >= 2");
  std::vector<std::uint64_t> counts(q, 0);
  std::uint64_t pi_x = 0;
  for_each_prime(2, x, [&](std::uint64_t p) {
    ++counts[p % q];
    ++pi_x;
  });
  const double mean = static_cast<double>(pi_x) / totient(factorize(q)).get_d();
  double worst = 0;
  for (std::uint64_t b = 1; b < q; ++b)
    if (std::gcd(b, q) == 1)
      worst = std::max(worst, std::fabs(static_cast<double>(counts[b]) - mean));
  return worst;
}

SquarefullExclusion squarefull_exclusion(const CongruenceSystem& system, std::uint64_t x,
                                         double alpha) {
  const double y = sifting_level(system, x, alpha);
  SquarefullExclusion out;
  for (const auto& cp : enumerate_class_primes(system, x))
    if (cp.least_delta_prime.exceeds(y) && !cp.delta_squarefree) ++out.count;
  out.bound_ratio = static_cast<double>(out.count) / std::pow(static_cast<double>(x), 1 - alpha);
  double tail = 0;
  for (auto q : small_prime_table())
    if (static_cast<double>(q) > y) tail += 1.0 / (static_cast<double>(q) * static_cast<double>(q));
  out.comparison_value = (static_cast<double>(x) + system.k) * tail;
  return out;
}

}  // namespace mfsp
