#include "mfsp/congruence.hpp"

#include "mfsp/error.hpp"

namespace mfsp {

namespace {

bool divides(const Natural& d, const Natural& n) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

Natural mod(const Natural& a, const Natural& m) {
  Natural r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

FactoredInteger square(const FactoredInteger& n) { return n * n; }

}  // namespace

FactoredInteger CongruenceSystem::factored_modulus() const {
  FactoredInteger out = square(K);
  for (const auto& ai : a) out = out * square(ai);
  return out;
}

FactoredInteger compute_K(unsigned k) {
  if (k < 2) throw Error(ErrorKind::precondition, "k must be at least 2");
  FactoredInteger out = factorize(std::uint64_t{k}) * factorize(std::uint64_t{k} + 1);
  for (unsigned j = 2; j < k; ++j) out = out * square(factorize(std::uint64_t{j}));
  return out;
}

Rational compute_epsilon(const MultiplicativeFunction& f, unsigned k, unsigned nu) {
  if (k < 2 || nu < 1) throw Error(ErrorKind::precondition, "compute_epsilon needs k >= 2, nu >= 1");
  const Rational two_nu(static_cast<long>(2 * nu));
  Rational eps = Rational(1) / (two_nu * evaluate(f, compute_K(k)));
  for (unsigned j = 1; j < k; ++j)
    eps = min(eps, Rational(1) / (two_nu * evaluate(f, factorize(std::uint64_t{j}))));
  return eps;
}

std::vector<Rational> targets_to_x(const std::vector<Rational>& c, const MultiplicativeFunction& f,
                                   const FactoredInteger& K) {
  if (f.declared_class() == DivergenceClass::non_divergent)
    throw Error(ErrorKind::class_mismatch,
                f.name() + " is a non-divergent function; no construction exists");
  const bool above = f.declared_class() == DivergenceClass::above_one;
  std::vector<Rational> x;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Rational base = i == 0 ? evaluate(f, K) : evaluate(f, factorize(std::uint64_t{i}));
    const std::string base_name = i == 0 ? "f(K)" : "f(" + std::to_string(i) + ")";
    const std::string coord = "c" + std::to_string(i + 1) + " = " + c[i].to_string();
    if (above && c[i] < base)
      throw Error(ErrorKind::box_violation, coord + " below " + base_name + "=" + base.to_string());
    if (!above && (c[i].sign() < 0 || c[i] > base))
      throw Error(ErrorKind::box_violation,
                  coord + " outside [0, " + base_name + "=" + base.to_string() + "]");
    x.push_back(c[i] / base);
  }
  return x;
}

CongruenceSystem build_system(const FactoredInteger& K, const std::vector<FactoredInteger>& a) {
  const auto k = static_cast<unsigned>(a.size());
  if (k < 2) throw Error(ErrorKind::precondition, "a congruence system needs k >= 2 moduli");
  if (!(K == compute_K(k)))
    throw Error(ErrorKind::precondition, "K = " + K.value().get_str() +
                                             " does not equal k(k+1)((k-1)!)^2 for k = " +
                                             std::to_string(k));
  for (unsigned i = 0; i < k; ++i) {
    const std::string name = "a" + std::to_string(i + 1);
    if (!is_squarefree(a[i]))
      throw Error(ErrorKind::precondition, name + " = " + a[i].value().get_str() + " is not squarefree");
    if (const Natural g = gcd(a[i].value(), K.value()); g != 1)
      throw Error(ErrorKind::coprimality_violation,
                  name + " not coprime to K (gcd(" + name + ", K)=" + g.get_str() + ")");
    for (unsigned j = 0; j < i; ++j) {
      if (const Natural g = gcd(a[j].value(), a[i].value()); g != 1)
        throw Error(ErrorKind::coprimality_violation,
                    name + " not squarefree-coprime (gcd(a" + std::to_string(j + 1) + "," + name +
                        ")=" + g.get_str() + ")");
    }
  }

  CongruenceSystem system;
  system.k = k;
  system.K = K;
  system.a = a;
  const Natural K2 = K.value() * K.value();
  system.congruences.push_back({mod(K.value() - 1, K2), K2});
  for (unsigned i = 0; i < k; ++i) {
    const Natural& ai = a[i].value();
    const Natural ai2 = ai * ai;
    const Natural residue = mod(ai - (i + 1), ai2);
    if (gcd(residue, ai2) != 1)
      throw Error(ErrorKind::precondition, "(a" + std::to_string(i + 1) + " - " +
                                               std::to_string(i + 1) + ", a^2) != 1");
    system.congruences.push_back({residue, ai2});
  }
  const auto solution = crt(system.congruences);
  system.N = solution.residue;
  system.modulus = solution.modulus;
  if (gcd(system.N, system.modulus) != 1)
    throw Error(ErrorKind::precondition, "solution class is not reduced");
  return system;
}

CrtSolution solve(const CongruenceSystem& system) { return crt(system.congruences); }

bool in_class(const Natural& n, const CongruenceSystem& system) {
  return sgn(n) >= 0 && mod(n, system.modulus) == system.N;
}

std::vector<FactoredInteger> delta_parts(const Natural& n, const CongruenceSystem& system) {
  if (!in_class(n, system))
    throw Error(ErrorKind::class_membership,
                n.get_str() + " is not congruent to " + system.N.get_str() + " mod " +
                    system.modulus.get_str());
  std::vector<FactoredInteger> parts;
  parts.reserve(system.k);
  for (unsigned i = 1; i <= system.k; ++i) {
    const Natural divisor =
        i == 1 ? Natural(system.a[0].value() * system.K.value())
               : Natural(system.a[i - 1].value() * (i - 1));
    Natural q = n + i;
    // Class membership guarantees exact division.
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), divisor.get_mpz_t());
    parts.push_back(factorize(q));
  }
  return parts;
}

FactoredInteger delta(const Natural& n, const CongruenceSystem& system) {
  FactoredInteger out;
  for (const auto& part : delta_parts(n, system)) out = out * part;
  return out;
}

bool Claim1Report::all() const {
  auto all_true = [](const std::vector<bool>& v) {
    for (bool b : v)
      if (!b) return false;
    return true;
  };
  return a1K_divides && cofactor1_coprime_a1 && cofactorK_coprime_K && all_true(shift_divides) &&
         all_true(cofactor_coprime_ai) && all_true(shift_coprime) && all_true(shift_identity);
}

Claim1Report verify_claim1(const Natural& n, const CongruenceSystem& system) {
  if (!in_class(n, system))
    throw Error(ErrorKind::class_membership,
                n.get_str() + " is not congruent to " + system.N.get_str() + " mod " +
                    system.modulus.get_str());
  Claim1Report r;
  const Natural& K = system.K.value();
  const Natural& a1 = system.a[0].value();
  const Natural n1 = n + 1;
  r.a1K_divides = divides(a1 * K, n1);
  if (r.a1K_divides) r.cofactor1_coprime_a1 = gcd(Natural(n1 / (a1 * K)), a1) == 1;
  r.cofactorK_coprime_K = divides(K, n1) && gcd(Natural(n1 / K), K) == 1;
  for (unsigned i = 2; i <= system.k; ++i) {
    const Natural& ai = system.a[i - 1].value();
    const Natural shift = i - 1;
    const Natural ni = n + i;
    const bool div = divides(shift * ai, ni);
    r.shift_divides.push_back(div);
    r.cofactor_coprime_ai.push_back(div && gcd(Natural(ni / (shift * ai)), ai) == 1);
    r.shift_coprime.push_back(divides(shift, ni) && gcd(Natural(ni / shift), shift) == 1);
    const Natural shift2 = shift * shift;
    r.shift_identity.push_back(divides(shift2, n1) && divides(shift, ni) &&
                               Natural(ni / shift) == Natural(n1 / shift2) * shift + 1);
  }
  return r;
}

}  // namespace mfsp
