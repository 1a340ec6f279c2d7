#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mfsp/arith.hpp"
#include "mfsp/rational.hpp"

namespace mfsp {

/// Which divergence hypothesis the caller asserts for f over the primes.
enum class DivergenceClass { above_one, below_one, non_divergent };

std::string_view to_string(DivergenceClass c);
DivergenceClass divergence_class_from_string(std::string_view s);

using PrimePowerRule = std::function<Rational(const Natural& p, unsigned a)>;

/// A positive multiplicative function given by its values on prime powers,
/// optionally patched by a finite table of (p, a) overrides. Immutable once
/// built; f(1) = 1 by the empty product.
class MultiplicativeFunction {
 public:
  MultiplicativeFunction(std::string name, PrimePowerRule rule, DivergenceClass declared);

  /// A built-in: n_over_phi, sigma_over_n, phi_over_n, gamma_over_n.
  static MultiplicativeFunction builtin(std::string_view name);
  static const std::vector<std::string>& builtin_names();

  /// Copy of *this with a custom name, declared class and override table.
  MultiplicativeFunction with_overrides(std::string name, DivergenceClass declared,
                                        std::map<std::pair<Natural, unsigned>, Rational> table) const;

  const std::string& name() const { return name_; }
  const std::string& base_name() const { return base_name_; }
  DivergenceClass declared_class() const { return declared_; }
  const std::map<std::pair<Natural, unsigned>, Rational>& overrides() const { return overrides_; }

  /// f(p^a); throws positivity_violation if the rule yields a value <= 0.
  Rational at_prime_power(const Natural& p, unsigned a) const;
  Rational at_prime(const Natural& p) const { return at_prime_power(p, 1); }

 private:
  std::string name_;
  std::string base_name_;
  PrimePowerRule rule_;
  DivergenceClass declared_;
  std::map<std::pair<Natural, unsigned>, Rational> overrides_;
};

Rational evaluate(const MultiplicativeFunction& f, const FactoredInteger& n);

/// f(p) - 1, exact.
Rational prime_deviation(const MultiplicativeFunction& f, const Natural& p);

struct DivergenceSums {
  double s_plus = 0;   // sum over p <= P, f(p) > 1, of f(p) - 1
  double s_minus = 0;  // sum over p <= P, f(p) < 1, of 1 - f(p)
};

DivergenceSums divergence_partial_sums(const MultiplicativeFunction& f, std::uint64_t P);

/// Empty when the partial sums are consistent with the declared class,
/// otherwise a human-readable warning. Never changes the declared class.
std::optional<std::string> audit_declared_class(const MultiplicativeFunction& f,
                                                std::uint64_t P);

struct LimitDiagnostic {
  Rational max_deviation;         // max |f(p) - 1| over primes in (P, 2P]
  std::uint64_t argmax_prime = 0; // 0 when (P, 2P] holds no prime
  /// Least prime p0 <= P with |f(q) - 1| <= 1/2 for all primes q in [p0, 2P].
  std::optional<std::uint64_t> p0;

  double value() const { return max_deviation.to_double(); }
};

LimitDiagnostic limit_diagnostic(const MultiplicativeFunction& f, std::uint64_t P);

}  // namespace mfsp
