#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "mfsp/error.hpp"
#include "mfsp/mult_func.hpp"
#include "mfsp/primes.hpp"

using namespace mfsp;

namespace {

const auto n_over_phi = MultiplicativeFunction::builtin("n_over_phi");
const auto sigma_over_n = MultiplicativeFunction::builtin("sigma_over_n");
const auto phi_over_n = MultiplicativeFunction::builtin("phi_over_n");
const auto gamma_over_n = MultiplicativeFunction::builtin("gamma_over_n");

Rational at(const MultiplicativeFunction& f, std::uint64_t n) { return evaluate(f, factorize(n)); }

// Definitions by brute force over divisors / residues.
std::uint64_t phi(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
  return c;
}
std::uint64_t sigma(std::uint64_t n) {
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) s += d;
  return s;
}
std::uint64_t radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t p = 2; p <= n; ++p)
    if (n % p == 0) {
      r *= p;
      while (n % p == 0) n /= p;
    }
  return r;
}
Rational frac(std::uint64_t a, std::uint64_t b) { return Rational(to_natural(a), to_natural(b)); }

}  // namespace

TEST_CASE("evaluate: worked values") {
  CHECK(at(n_over_phi, 6) == Rational(3));
  CHECK(at(sigma_over_n, 12) == Rational(7, 3));
  for (const auto& name : MultiplicativeFunction::builtin_names())
    CHECK(at(MultiplicativeFunction::builtin(name), 1) == Rational(1));
}

TEST_CASE("built-ins agree with their definitions") {
  for (std::uint64_t n = 1; n <= 600; ++n) {
    CHECK(at(n_over_phi, n) == frac(n, phi(n)));
    CHECK(at(phi_over_n, n) == frac(phi(n), n));
    CHECK(at(sigma_over_n, n) == frac(sigma(n), n));
    CHECK(at(gamma_over_n, n) == frac(radical(n), n));
  }
}

TEST_CASE("multiplicativity on coprime pairs") {
  for (std::uint64_t m = 1; m <= 60; ++m)
    for (std::uint64_t n = 1; n <= 60; ++n)
      if (std::gcd(m, n) == 1)
        for (const auto* f : {&n_over_phi, &sigma_over_n, &phi_over_n, &gamma_over_n})
          CHECK(at(*f, m * n) == at(*f, m) * at(*f, n));
}

TEST_CASE("prime_deviation") {
  CHECK(prime_deviation(n_over_phi, 5) == Rational(1, 4));
  CHECK(prime_deviation(phi_over_n, 5) == Rational(-1, 5));
  CHECK(prime_deviation(gamma_over_n, 7) == Rational(0));
}

TEST_CASE("divergence_partial_sums") {
  double harmonic = 0;
  for (auto p : primes_up_to(100)) harmonic += 1.0 / static_cast<double>(p);
  auto s = divergence_partial_sums(sigma_over_n, 100);
  CHECK(s.s_plus == doctest::Approx(harmonic).epsilon(1e-12));
  CHECK(s.s_plus == doctest::Approx(1.803).epsilon(1e-3));
  CHECK(s.s_minus == 0);
  s = divergence_partial_sums(gamma_over_n, 100);
  CHECK(s.s_plus == 0);
  CHECK(s.s_minus == 0);
  s = divergence_partial_sums(phi_over_n, 100);
  CHECK(s.s_plus == 0);
  CHECK(s.s_minus == doctest::Approx(harmonic).epsilon(1e-12));
}

TEST_CASE("declared class audit warns but never overrides") {
  CHECK_FALSE(audit_declared_class(sigma_over_n, 10000).has_value());
  CHECK_FALSE(audit_declared_class(phi_over_n, 10000).has_value());
  CHECK_FALSE(audit_declared_class(gamma_over_n, 10000).has_value());
  const auto mislabelled = sigma_over_n.with_overrides("sigma_mislabelled", DivergenceClass::below_one, {});
  CHECK(audit_declared_class(mislabelled, 10000).has_value());
  CHECK(mislabelled.declared_class() == DivergenceClass::below_one);
}

TEST_CASE("limit_diagnostic") {
  auto d = limit_diagnostic(n_over_phi, 100);
  CHECK(d.max_deviation == Rational(1, 100));
  CHECK(d.argmax_prime == 101);
  CHECK(limit_diagnostic(gamma_over_n, 500).max_deviation == Rational(0));
  d = limit_diagnostic(sigma_over_n, 1000);
  CHECK(d.max_deviation == Rational(1, 1009));
  CHECK(d.argmax_prime == 1009);
  // |f(2) - 1| = 1 for n/phi(n); every later prime is within 1/2.
  CHECK(limit_diagnostic(n_over_phi, 100).p0 == std::optional<std::uint64_t>(3));
}

TEST_CASE("overrides: table wins, positivity enforced") {
  std::map<std::pair<Natural, unsigned>, Rational> table;
  table[{Natural(2), 1}] = Rational(5, 4);
  table[{Natural(3), 2}] = Rational(7);
  const auto g = n_over_phi.with_overrides("custom", DivergenceClass::above_one, table);
  CHECK(g.name() == "custom");
  CHECK(g.base_name() == "n_over_phi");
  CHECK(at(g, 2) == Rational(5, 4));
  CHECK(at(g, 4) == Rational(2));
  CHECK(at(g, 18) == Rational(5, 4) * Rational(7));
  CHECK(at(g, 5) == Rational(5, 4));

  std::map<std::pair<Natural, unsigned>, Rational> bad;
  bad[{Natural(5), 1}] = Rational(0);
  CHECK_THROWS_AS(n_over_phi.with_overrides("bad", DivergenceClass::above_one, bad), Error);
  CHECK_THROWS_AS(MultiplicativeFunction::builtin("no_such"), Error);
}

TEST_CASE("divergence class strings") {
  for (auto c : {DivergenceClass::above_one, DivergenceClass::below_one, DivergenceClass::non_divergent})
    CHECK(divergence_class_from_string(to_string(c)) == c);
  CHECK(sigma_over_n.declared_class() == DivergenceClass::above_one);
  CHECK(n_over_phi.declared_class() == DivergenceClass::above_one);
  CHECK(phi_over_n.declared_class() == DivergenceClass::below_one);
  CHECK(gamma_over_n.declared_class() == DivergenceClass::non_divergent);
}
