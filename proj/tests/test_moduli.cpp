#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "mfsp/error.hpp"
#include "mfsp/moduli.hpp"

using namespace mfsp;

namespace {

const auto n_over_phi = MultiplicativeFunction::builtin("n_over_phi");
const auto sigma_over_n = MultiplicativeFunction::builtin("sigma_over_n");
const auto phi_over_n = MultiplicativeFunction::builtin("phi_over_n");
const auto gamma_over_n = MultiplicativeFunction::builtin("gamma_over_n");

std::vector<std::uint64_t> values(const std::vector<FactoredInteger>& a) {
  std::vector<std::uint64_t> out;
  for (const auto& x : a) out.push_back(to_u64(x.value()));
  return out;
}

// Structural checks every builder output must pass.
void check_moduli(const ModulusRequest& req, const std::vector<FactoredInteger>& a) {
  REQUIRE(a.size() == req.targets.size());
  Natural support = req.m.value();
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(is_squarefree(a[i]));
    CHECK(abs(evaluate(req.f, a[i]) - req.targets[i]) < req.epsilon);
    Natural g;
    mpz_gcd(g.get_mpz_t(), a[i].value().get_mpz_t(), support.get_mpz_t());
    CHECK(g == 1);
    if (!a[i].is_one()) CHECK(p_minus(a[i]).value() > p_plus(factorize(support)));
    support *= a[i].value();
  }
}

}  // namespace

TEST_CASE("log_term_stream: first terms") {
  auto s = log_term_stream(n_over_phi, Side::above_one, factorize(std::uint64_t{6}));
  auto t = s.next();
  CHECK(t->index == 5);
  CHECK(t->magnitude == doctest::Approx(std::log(5.0 / 4.0)));
  t = s.next();
  CHECK(t->index == 7);
  CHECK(t->magnitude == doctest::Approx(std::log(7.0 / 6.0)));
  CHECK(s.next()->index == 11);

  s = log_term_stream(phi_over_n, Side::below_one, factorize(std::uint64_t{6}));
  t = s.next();
  CHECK(t->index == 5);
  CHECK(t->magnitude == doctest::Approx(std::log(5.0 / 4.0)));
  CHECK(s.next()->magnitude == doctest::Approx(std::log(7.0 / 6.0)));

  s = log_term_stream(sigma_over_n, Side::below_one, factorize(std::uint64_t{1}), 100000);
  CHECK_FALSE(s.next().has_value());
}

TEST_CASE("log_term_stream: magnitudes positive and decreasing to 0") {
  auto s = log_term_stream(sigma_over_n, Side::above_one, factorize(std::uint64_t{1}));
  double prev = 1e9;
  for (int i = 0; i < 2000; ++i) {
    const auto t = s.next();
    REQUIRE(t.has_value());
    CHECK(t->magnitude > 0);
    CHECK(t->magnitude < prev);
    prev = t->magnitude;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("build_moduli: worked requests") {
  ModulusRequest r1{sigma_over_n, {Rational(1), Rational(1)}, Rational(1, 8), factorize(std::uint64_t{6})};
  const auto a1 = build_moduli(r1);
  CHECK(values(a1) == std::vector<std::uint64_t>{11, 13});
  check_moduli(r1, a1);

  ModulusRequest r2{n_over_phi, {Rational(6, 5)}, Rational(1, 100), factorize(std::uint64_t{6})};
  const auto a2 = build_moduli(r2);
  CHECK(values(a2) == std::vector<std::uint64_t>{259});
  CHECK(evaluate(n_over_phi, a2[0]) == Rational(259, 216));
  CHECK(abs(Rational(259, 216) - Rational(6, 5)) == Rational(1, 1080));

  ModulusRequest r3{phi_over_n, {Rational(4, 5)}, Rational(1, 100), factorize(std::uint64_t{6})};
  const auto a3 = build_moduli(r3);
  CHECK(values(a3) == std::vector<std::uint64_t>{5});
}

TEST_CASE("build_moduli: many targets keep supports increasing") {
  ModulusRequest req{n_over_phi,
                     {Rational(3, 2), Rational(1), Rational(5, 4), Rational(21, 10), Rational(101, 100)},
                     Rational(1, 50),
                     factorize(std::uint64_t{720})};
  check_moduli(req, build_moduli(req));

  ModulusRequest below{phi_over_n, {Rational(1, 2), Rational(9, 10), Rational(1), Rational(2, 3)},
                       Rational(1, 40), factorize(std::uint64_t{48})};
  check_moduli(below, build_moduli(below));
}

TEST_CASE("build_moduli: errors") {
  ModulusRequest nd{gamma_over_n, {Rational(1)}, Rational(1, 8), factorize(std::uint64_t{6})};
  try {
    build_moduli(nd);
    FAIL("expected class mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::class_mismatch);
  }

  ModulusRequest wrong_side{sigma_over_n, {Rational(1, 2)}, Rational(1, 8), factorize(std::uint64_t{6})};
  try {
    build_moduli(wrong_side);
    FAIL("expected class mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::class_mismatch);
  }

  // Primes up to 1000 give a product of about 3.7, far short of 10.
  ModulusRequest tight{sigma_over_n, {Rational(10)}, Rational(1, 1000), factorize(std::uint64_t{6}), 1000};
  try {
    build_moduli(tight);
    FAIL("expected budget exhaustion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::budget_exhausted);
    CHECK(std::string(e.what()).find("partial product") != std::string::npos);
  }
}

TEST_CASE("build_moduli: x = 1 and x near 0") {
  ModulusRequest one{n_over_phi, {Rational(1)}, Rational(1, 100), factorize(std::uint64_t{6})};
  const auto a = build_moduli(one);
  check_moduli(one, a);
  CHECK(a[0].distinct_primes() == 1);

  ModulusRequest zero{phi_over_n, {Rational(0)}, Rational(1, 5), factorize(std::uint64_t{6})};
  const auto z = build_moduli(zero);
  check_moduli(zero, z);
}
