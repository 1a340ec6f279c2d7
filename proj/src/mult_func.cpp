#include "mfsp/mult_func.hpp"

#include <cmath>
#include <sstream>

#include "mfsp/error.hpp"
#include "mfsp/primes.hpp"

namespace mfsp {

std::string_view to_string(DivergenceClass c) {
  switch (c) {
    case DivergenceClass::above_one: return "above-one";
    case DivergenceClass::below_one: return "below-one";
    case DivergenceClass::non_divergent: return "non-divergent";
  }
  return "non-divergent";
}

DivergenceClass divergence_class_from_string(std::string_view s) {
  if (s == "above-one") return DivergenceClass::above_one;
  if (s == "below-one") return DivergenceClass::below_one;
  if (s == "non-divergent") return DivergenceClass::non_divergent;
  throw Error(ErrorKind::precondition, "unknown divergence class '" + std::string(s) + "'");
}

MultiplicativeFunction::MultiplicativeFunction(std::string name, PrimePowerRule rule,
                                               DivergenceClass declared)
    : name_(std::move(name)), base_name_(name_), rule_(std::move(rule)), declared_(declared) {}

const std::vector<std::string>& MultiplicativeFunction::builtin_names() {
  static const std::vector<std::string> names = {"n_over_phi", "sigma_over_n", "phi_over_n",
                                                 "gamma_over_n"};
  return names;
}

MultiplicativeFunction MultiplicativeFunction::builtin(std::string_view name) {
  if (name == "n_over_phi")
    return {"n_over_phi", [](const Natural& p, unsigned) { return Rational(p, p - 1); },
            DivergenceClass::above_one};
  if (name == "sigma_over_n")
    return {"sigma_over_n",
            [](const Natural& p, unsigned a) {
              Natural pa;
              mpz_pow_ui(pa.get_mpz_t(), p.get_mpz_t(), a);
              return Rational(Natural(pa * p - 1), Natural(pa * (p - 1)));
            },
            DivergenceClass::above_one};
  if (name == "phi_over_n")
    return {"phi_over_n", [](const Natural& p, unsigned) { return Rational(p - 1, p); },
            DivergenceClass::below_one};
  if (name == "gamma_over_n")
    return {"gamma_over_n",
            [](const Natural& p, unsigned a) {
              Natural den;
              mpz_pow_ui(den.get_mpz_t(), p.get_mpz_t(), a - 1);
              return Rational(Natural(1), den);
            },
            DivergenceClass::non_divergent};
  throw Error(ErrorKind::precondition, "unknown function '" + std::string(name) + "'");
}

MultiplicativeFunction MultiplicativeFunction::with_overrides(
    std::string name, DivergenceClass declared,
    std::map<std::pair<Natural, unsigned>, Rational> table) const {
  MultiplicativeFunction out = *this;
  out.name_ = std::move(name);
  out.declared_ = declared;
  for (auto& [key, value] : table) {
    if (value.sign() <= 0)
      throw Error(ErrorKind::positivity_violation,
                  "override f(" + key.first.get_str() + "^" + std::to_string(key.second) +
                      ") = " + value.to_string() + " is not positive");
    out.overrides_[key] = value;
  }
  return out;
}

Rational MultiplicativeFunction::at_prime_power(const Natural& p, unsigned a) const {
  if (!overrides_.empty()) {
    if (auto it = overrides_.find({p, a}); it != overrides_.end()) return it->second;
  }
  Rational value = rule_(p, a);
  if (value.sign() <= 0)
    throw Error(ErrorKind::positivity_violation,
                name_ + "(" + p.get_str() + "^" + std::to_string(a) + ") = " +
                    value.to_string() + " is not positive");
  return value;
}

Rational evaluate(const MultiplicativeFunction& f, const FactoredInteger& n) {
  Rational out(1);
  for (const auto& pp : n.factors()) out *= f.at_prime_power(pp.prime, pp.exponent);
  return out;
}

Rational prime_deviation(const MultiplicativeFunction& f, const Natural& p) {
  return f.at_prime(p) - Rational(1);
}

DivergenceSums divergence_partial_sums(const MultiplicativeFunction& f, std::uint64_t P) {
  DivergenceSums sums;
  for_each_prime(2, P, [&](std::uint64_t p) {
    const double d = prime_deviation(f, to_natural(p)).to_double();
    if (d > 0) sums.s_plus += d;
    if (d < 0) sums.s_minus -= d;
  });
  return sums;
}

std::optional<std::string> audit_declared_class(const MultiplicativeFunction& f,
                                                std::uint64_t P) {
  const auto sums = divergence_partial_sums(f, P);
  std::ostringstream os;
  os << f.name() << " declared " << to_string(f.declared_class()) << " but partial sums to "
     << P << " are S+ = " << sums.s_plus << ", S- = " << sums.s_minus;
  switch (f.declared_class()) {
    case DivergenceClass::above_one:
      if (sums.s_plus <= sums.s_minus) return os.str();
      break;
    case DivergenceClass::below_one:
      if (sums.s_minus <= sums.s_plus) return os.str();
      break;
    case DivergenceClass::non_divergent:
      if (sums.s_plus > 0 || sums.s_minus > 0) return os.str();
      break;
  }
  return std::nullopt;
}

LimitDiagnostic limit_diagnostic(const MultiplicativeFunction& f, std::uint64_t P) {
  LimitDiagnostic out;
  const Rational half(Natural(1), Natural(2));
  std::optional<std::uint64_t> candidate;  // start of the current run with |f(q)-1| <= 1/2
  for_each_prime(2, 2 * P, [&](std::uint64_t p) {
    const Rational dev = abs(prime_deviation(f, to_natural(p)));
    if (dev <= half) {
      if (!candidate) candidate = p;
    } else {
      candidate.reset();
    }
    if (p > P && (out.argmax_prime == 0 || dev > out.max_deviation)) {
      out.max_deviation = dev;
      out.argmax_prime = p;
    }
  });
  if (candidate && *candidate <= P) out.p0 = candidate;
  return out;
}

}  // namespace mfsp
