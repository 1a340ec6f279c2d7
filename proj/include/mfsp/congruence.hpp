#pragma once

#include <vector>

#include "mfsp/arith.hpp"
#include "mfsp/mult_func.hpp"
#include "mfsp/rational.hpp"

namespace mfsp {

/// The residue conditions p + 1 = K (mod K^2) and p + i = a_i (mod a_i^2)
/// together with their joint solution p = N (mod M'), M' = K^2 prod a_i^2.
struct CongruenceSystem {
  unsigned k = 0;
  FactoredInteger K;
  std::vector<FactoredInteger> a;
  std::vector<Congruence> congruences;  // on p itself, residues in [0, modulus)
  Natural N;
  Natural modulus;  // M'

  FactoredInteger factored_modulus() const;
};

/// K = k (k+1) ((k-1)!)^2.
FactoredInteger compute_K(unsigned k);

/// min over j in {1, ..., k-1} u {K} of 1 / (2 nu f(j)).
Rational compute_epsilon(const MultiplicativeFunction& f, unsigned k, unsigned nu);

/// x_1 = c_1 / f(K), x_i = c_i / f(i-1). Rejects c outside the box that
/// matches f's declared class.
std::vector<Rational> targets_to_x(const std::vector<Rational>& c, const MultiplicativeFunction& f,
                                   const FactoredInteger& K);

/// Checks the preconditions on K and a, builds the congruences and solves them.
CongruenceSystem build_system(const FactoredInteger& K, const std::vector<FactoredInteger>& a);

/// Re-solves the stored congruences from scratch.
CrtSolution solve(const CongruenceSystem& system);

bool in_class(const Natural& n, const CongruenceSystem& system);

/// (n+1)/(a_1 K) followed by (n+i)/(a_i (i-1)) for i = 2..k, each factored.
std::vector<FactoredInteger> delta_parts(const Natural& n, const CongruenceSystem& system);

/// The product of delta_parts; throws class_membership when n is not = N mod M'.
FactoredInteger delta(const Natural& n, const CongruenceSystem& system);

struct Claim1Report {
  bool a1K_divides = false;                // a_1 K | n+1
  bool cofactor1_coprime_a1 = false;       // ((n+1)/(a_1 K), a_1) = 1
  bool cofactorK_coprime_K = false;        // ((n+1)/K, K) = 1
  // Indexed by i = 2..k (element 0 is i = 2).
  std::vector<bool> shift_divides;         // (i-1) a_i | n+i
  std::vector<bool> cofactor_coprime_ai;   // ((n+i)/((i-1) a_i), a_i) = 1
  std::vector<bool> shift_coprime;         // ((n+i)/(i-1), i-1) = 1
  std::vector<bool> shift_identity;        // (n+i)/(i-1) = ((n+1)/(i-1)^2)(i-1) + 1

  bool all() const;
};

Claim1Report verify_claim1(const Natural& n, const CongruenceSystem& system);

}  // namespace mfsp
