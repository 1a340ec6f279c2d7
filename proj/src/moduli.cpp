#include "mfsp/moduli.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "mfsp/error.hpp"
#include "mfsp/primes.hpp"

namespace mfsp {

namespace {

const Rational kOne(1);
const Rational kHalf(Natural(1), Natural(2));

// Primes past `after` (up to budget) that the builder may consume for a
// given side, paired with f(p).
class AdmissiblePrimes {
 public:
  AdmissiblePrimes(const MultiplicativeFunction& f, Side side, std::uint64_t after,
                   std::uint64_t budget)
      : f_(f), side_(side), cursor_(after), budget_(budget) {}

  std::optional<std::pair<std::uint64_t, Rational>> next() {
    while (true) {
      const std::uint64_t p = cursor_.next();
      if (p > budget_) return std::nullopt;
      Rational value = f_.at_prime(to_natural(p));
      const Rational dev = value - kOne;
      if (abs(dev) > kHalf) continue;
      if (side_ == Side::above_one ? dev.sign() > 0 : dev.sign() < 0)
        return std::make_pair(p, std::move(value));
    }
  }

 private:
  MultiplicativeFunction f_;
  Side side_;
  PrimeCursor cursor_;
  std::uint64_t budget_;
};

// log of a value on the requested side, expressed as a non-negative number.
double side_log(const Rational& value, Side side) {
  const Rational oriented = side == Side::above_one ? value : kOne / value;
  return std::log1p((oriented - kOne).to_double());
}

FactoredInteger product_of(const std::vector<std::uint64_t>& primes) {
  std::vector<PrimePower> factors;
  factors.reserve(primes.size());
  for (auto p : primes) factors.push_back({to_natural(p), 1});
  return FactoredInteger::from_factors(std::move(factors));
}

[[noreturn]] void budget_error(std::size_t i, const MultiplicativeFunction& f,
                               const std::vector<std::uint64_t>& partial, const Rational& target,
                               std::uint64_t budget, const std::string& detail = {}) {
  const FactoredInteger a = product_of(partial);
  const Rational value = evaluate(f, a);
  std::ostringstream os;
  os << "prime budget " << budget << " exhausted building a_" << (i + 1) << ": partial product "
     << a.value().get_str() << " has f = " << value.to_string() << ", residual |f - x| = "
     << abs(value - target).to_string() << " (~" << abs(value - target).to_double() << ")";
  if (!detail.empty()) os << "; " << detail;
  throw Error(ErrorKind::budget_exhausted, os.str());
}

}  // namespace

TermStream log_term_stream(const MultiplicativeFunction& f, Side mode,
                           const FactoredInteger& exclude, std::uint64_t prime_budget) {
  auto primes = std::make_shared<AdmissiblePrimes>(f, mode, to_u64(p_plus(exclude)), prime_budget);
  return TermStream([primes, mode]() -> std::optional<Term> {
    auto next = primes->next();
    if (!next) return std::nullopt;
    return Term{next->first, side_log(next->second, mode)};
  });
}

std::vector<FactoredInteger> build_moduli(const ModulusRequest& request) {
  const auto& f = request.f;
  if (request.epsilon.sign() <= 0) throw Error(ErrorKind::precondition, "epsilon must be positive");
  if (f.declared_class() == DivergenceClass::non_divergent)
    throw Error(ErrorKind::class_mismatch,
                f.name() + " is a non-divergent function; no construction exists");
  const Side side =
      f.declared_class() == DivergenceClass::above_one ? Side::above_one : Side::below_one;
  for (std::size_t i = 0; i < request.targets.size(); ++i) {
    const Rational& x = request.targets[i];
    const bool ok = side == Side::above_one ? x >= kOne : (x.sign() >= 0 && x <= kOne);
    if (!ok)
      throw Error(ErrorKind::class_mismatch,
                  "target x_" + std::to_string(i + 1) + " = " + x.to_string() + " is not on the " +
                      std::string(to_string(f.declared_class())) + " side of 1");
  }

  std::vector<FactoredInteger> out;
  FactoredInteger support = request.m;
  for (std::size_t i = 0; i < request.targets.size(); ++i) {
    const Rational& x = request.targets[i];
    const std::uint64_t after = to_u64(p_plus(support));
    std::vector<std::uint64_t> chosen;

    if (x == kOne) {
      // A single fresh prime with |f(p) - 1| < epsilon, the smallest one.
      AdmissiblePrimes primes(f, side, after, request.prime_budget);
      while (auto next = primes.next()) {
        if (abs(next->second - kOne) < request.epsilon) {
          chosen.push_back(next->first);
          break;
        }
      }
      if (chosen.empty()) budget_error(i, f, chosen, x, request.prime_budget);
    } else if (x.sign() == 0) {
      // log(1/x) is infinite: multiply primes with f(p) < 1 until f(a) < epsilon.
      AdmissiblePrimes primes(f, side, after, request.prime_budget);
      Rational value = kOne;
      while (!(value < request.epsilon)) {
        auto next = primes.next();
        if (!next) budget_error(i, f, chosen, x, request.prime_budget);
        chosen.push_back(next->first);
        value *= next->second;
      }
    } else {
      const double beta = side_log(x, side);
      double tol = std::log1p((request.epsilon / x).to_double()) * (1 - 1e-9);
      constexpr int kMaxRetries = 40;
      bool verified = false;
      for (int attempt = 0; attempt < kMaxRetries && !verified; ++attempt, tol /= 2) {
        TermStream stream = log_term_stream(f, side, support, request.prime_budget);
        try {
          chosen = select_to_target(stream, beta, tol, std::numeric_limits<std::uint64_t>::max())
                       .chosen;
        } catch (const SelectionExhausted& e) {
          if (e.kind() == ErrorKind::precision_exhausted)
            throw Error(ErrorKind::precision_exhausted,
                        "building a_" + std::to_string(i + 1) + ": " + e.what());
          budget_error(i, f, e.partial().chosen, x, request.prime_budget, e.what());
        }
        verified = abs(evaluate(f, product_of(chosen)) - x) < request.epsilon;
      }
      if (!verified)
        throw Error(ErrorKind::precision_exhausted,
                    "could not certify |f(a_" + std::to_string(i + 1) + ") - x| < epsilon exactly");
    }

    FactoredInteger a = product_of(chosen);
    if (!(abs(evaluate(f, a) - x) < request.epsilon))
      throw Error(ErrorKind::precision_exhausted,
                  "a_" + std::to_string(i + 1) + " fails the exact epsilon check");
    support = support * a;
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace mfsp
