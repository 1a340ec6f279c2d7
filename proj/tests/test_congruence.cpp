#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mfsp/congruence.hpp"
#include "mfsp/error.hpp"

using namespace mfsp;

namespace {

const auto n_over_phi = MultiplicativeFunction::builtin("n_over_phi");
const auto sigma_over_n = MultiplicativeFunction::builtin("sigma_over_n");
const auto phi_over_n = MultiplicativeFunction::builtin("phi_over_n");
const auto gamma_over_n = MultiplicativeFunction::builtin("gamma_over_n");

FactoredInteger F(std::uint64_t n) { return factorize(n); }

CongruenceSystem worked() { return build_system(F(6), {F(5), F(7)}); }

Natural gcd(const Natural& a, const Natural& b) {
  Natural g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

TEST_CASE("compute_K") {
  CHECK(compute_K(2).value() == 6);
  CHECK(compute_K(3).value() == 48);
  CHECK(compute_K(4).value() == 720);
  // Independent: k (k+1) ((k-1)!)^2.
  for (unsigned k = 2; k <= 12; ++k) {
    Natural fact = 1;
    for (unsigned j = 2; j < k; ++j) fact *= j;
    CHECK(compute_K(k).value() == Natural(k) * (k + 1) * fact * fact);
    CHECK(compute_K(k).validate());
  }
  CHECK_THROWS_AS(compute_K(1), Error);
}

TEST_CASE("compute_epsilon") {
  CHECK(compute_epsilon(sigma_over_n, 2, 2) == Rational(1, 8));
  CHECK(compute_epsilon(n_over_phi, 2, 1) == Rational(1, 6));
  CHECK(compute_epsilon(phi_over_n, 2, 1) == Rational(1, 2));
}

TEST_CASE("targets_to_x") {
  CHECK(targets_to_x({Rational(2), Rational(1)}, sigma_over_n, F(6)) ==
        std::vector<Rational>{Rational(1), Rational(1)});
  CHECK(targets_to_x({Rational(3), Rational(1)}, n_over_phi, F(6)) ==
        std::vector<Rational>{Rational(1), Rational(1)});
  CHECK(targets_to_x({Rational(1, 3), Rational(1)}, phi_over_n, F(6)) ==
        std::vector<Rational>{Rational(1), Rational(1)});
  try {
    targets_to_x({Rational(1), Rational(1)}, sigma_over_n, F(6));
    FAIL("expected box violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::box_violation);
    CHECK(std::string(e.what()).find("c1") != std::string::npos);
    CHECK(std::string(e.what()).find("f(K)=2") != std::string::npos);
  }
  try {
    targets_to_x({Rational(2), Rational(1)}, gamma_over_n, F(6));
    FAIL("expected class mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::class_mismatch);
  }
}

TEST_CASE("build_system and solve: worked systems") {
  const auto s = worked();
  CHECK(s.N == 28229);
  CHECK(s.modulus == 44100);
  CHECK(solve(s).residue == 28229);
  CHECK(build_system(F(6), {F(11), F(13)}).modulus == 736164);
  try {
    build_system(F(6), {F(5), F(35)});
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("a2 not squarefree-coprime (gcd(a1,a2)=5)") != std::string::npos);
  }
  CHECK_THROWS_AS(build_system(F(6), {F(25), F(7)}), Error);   // not squarefree
  CHECK_THROWS_AS(build_system(F(6), {F(5), F(21)}), Error);   // shares 3 with K
  CHECK_THROWS_AS(build_system(F(12), {F(5), F(7)}), Error);   // wrong K
}

TEST_CASE("solution satisfies every congruence (brute force)") {
  const auto s = worked();
  for (const auto& c : s.congruences) CHECK(Natural(s.N % c.modulus) == c.residue);
  // p + 1 = K mod K^2, p + i = a_i mod a_i^2, checked straight from the definition.
  CHECK((28229 + 1) % 36 == 6);
  CHECK((28229 + 1) % 25 == 5);
  CHECK((28229 + 2) % 49 == 7);
  CHECK(gcd(s.N, s.modulus) == 1);
}

TEST_CASE("delta: worked values") {
  const auto s = worked();
  const auto d = delta(28229, s);
  CHECK(d.value() == 3795053);
  CHECK(d.to_string() == "37*109*941");
  CHECK(is_squarefree(d));
  CHECK(p_minus(d) == PrimeOrInfinity::prime(37));
  CHECK(delta(72329, s).value() == Natural(2411) * 10333);
  CHECK(delta(72329, s).value() == Natural(72330 / 30) * (72331 / 7));
  try {
    delta(28230, s);
    FAIL("expected class membership error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::class_membership);
  }
}

TEST_CASE("verify_claim1: worked and property") {
  const auto s = worked();
  CHECK(verify_claim1(28229, s).all());
  CHECK(verify_claim1(72329, s).all());

  const CongruenceSystem systems[] = {worked(), build_system(F(48), {F(5), F(7), F(11)}),
                                      build_system(F(720), {F(7), F(11), F(13), F(17)})};
  for (const auto& sys : systems) {
    for (unsigned j = 0; j < 50; ++j) {
      const Natural n = sys.N + sys.modulus * j;
      CHECK(in_class(n, sys));
      const auto r = verify_claim1(n, sys);
      CHECK(r.all());
      CHECK(r.shift_identity.size() == sys.k - 1);
      const auto d = delta(n, sys);
      CHECK(gcd(d.value(), sys.modulus) == 1);
      // delta times its removed factors rebuilds the product of shifts.
      Natural shifts = 1, removed = sys.a[0].value() * sys.K.value();
      for (unsigned i = 1; i <= sys.k; ++i) shifts *= n + i;
      for (unsigned i = 2; i <= sys.k; ++i) removed *= sys.a[i - 1].value() * (i - 1);
      CHECK(d.value() * removed == shifts);
    }
  }
}
