#include "mfsp/series.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>

namespace mfsp {

std::optional<Term> TermStream::next() { return source_(); }

namespace {

// Neumaier's variant of Kahan summation; value() = sum + compensation.
struct CompensatedSum {
  double sum = 0;
  double comp = 0;

  double value() const { return sum + comp; }

  CompensatedSum plus(double x) const {
    CompensatedSum out;
    out.sum = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      out.comp = comp + ((sum - out.sum) + x);
    else
      out.comp = comp + ((x - out.sum) + sum);
    return out;
  }
};

std::string describe(const SelectionResult& r, double beta) {
  std::ostringstream os;
  os.precision(17);
  os << "target " << beta << ", achieved " << r.achieved << ", residual gap " << r.gap
     << " after " << r.terms_consumed << " terms";
  return os.str();
}

}  // namespace

SelectionResult select_to_target(TermStream& stream, double beta, double tol,
                                 std::uint64_t budget) {
  if (!(beta >= 0) || !(tol > 0) || budget < 1)
    throw Error(ErrorKind::precondition, "select_to_target needs beta >= 0, tol > 0, budget >= 1");
  SelectionResult result;
  result.gap = beta;
  if (beta == 0) return result;

  CompensatedSum acc;
  while (true) {
    if (beta - acc.value() < tol) break;
    if (result.terms_consumed >= budget)
      throw SelectionExhausted(ErrorKind::budget_exhausted,
                               "term budget exhausted: " + describe(result, beta), result);
    if (tol <= 1e3 * DBL_EPSILON * static_cast<double>(result.terms_consumed + 1))
      throw SelectionExhausted(ErrorKind::precision_exhausted,
                               "tolerance too small for the number of terms consumed: " +
                                   describe(result, beta),
                               result);
    const auto term = stream.next();
    if (!term)
      throw SelectionExhausted(ErrorKind::budget_exhausted,
                               "term stream ended: " + describe(result, beta), result);
    ++result.terms_consumed;
    const CompensatedSum candidate = acc.plus(term->magnitude);
    if (candidate.value() <= beta) {
      acc = candidate;
      result.chosen.push_back(term->index);
      result.achieved = acc.value();
      result.gap = beta - result.achieved;
    }
  }
  return result;
}

}  // namespace mfsp
