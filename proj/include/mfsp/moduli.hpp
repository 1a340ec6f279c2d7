#pragma once

#include <cstdint>
#include <vector>

#include "mfsp/arith.hpp"
#include "mfsp/mult_func.hpp"
#include "mfsp/rational.hpp"
#include "mfsp/series.hpp"

namespace mfsp {

enum class Side { above_one, below_one };

inline constexpr std::uint64_t kDefaultPrimeBudget = 100'000'000;

struct ModulusRequest {
  MultiplicativeFunction f;
  std::vector<Rational> targets;
  Rational epsilon;
  FactoredInteger m;
  std::uint64_t prime_budget = kDefaultPrimeBudget;
};

/// Terms (p, log f(p)) in above-one mode or (p, log(1/f(p))) in below-one
/// mode over primes p > P+(exclude), p <= prime_budget, restricted to
/// |f(p) - 1| <= 1/2 and f(p) on the requested side of 1.
TermStream log_term_stream(const MultiplicativeFunction& f, Side mode,
                           const FactoredInteger& exclude,
                           std::uint64_t prime_budget = kDefaultPrimeBudget);

/// Squarefree, pairwise coprime a_i, each coprime to m, with
/// |f(a_i) - x_i| < epsilon checked exactly. Supports are increasing:
/// P-(a_i) > P+(m a_1 ... a_{i-1}).
std::vector<FactoredInteger> build_moduli(const ModulusRequest& request);

}  // namespace mfsp
