#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mfsp/error.hpp"

namespace mfsp {

struct Term {
  std::uint64_t index = 0;
  double magnitude = 0;
};

/// A one-pass sequence of non-negative terms. The caller vouches that the
/// magnitudes tend to 0 and that their sum diverges; an exhausted source
/// (std::nullopt) just ends the stream.
class TermStream {
 public:
  using Source = std::function<std::optional<Term>()>;

  explicit TermStream(Source source) : source_(std::move(source)) {}

  std::optional<Term> next();

 private:
  Source source_;
};

struct SelectionResult {
  std::vector<std::uint64_t> chosen;
  double achieved = 0;
  double gap = 0;  // beta - achieved
  std::uint64_t terms_consumed = 0;
};

/// Raised when the stream (or the term budget) runs out before the gap
/// falls below tol; carries the selection made so far.
class SelectionExhausted : public Error {
 public:
  SelectionExhausted(ErrorKind kind, const std::string& message, SelectionResult partial)
      : Error(kind, message), partial_(std::move(partial)) {}

  const SelectionResult& partial() const { return partial_; }

 private:
  SelectionResult partial_;
};

/// Never-overshoot greedy: walk the stream in order, keep a term iff the
/// running sum stays <= beta, stop as soon as beta - sum < tol.
///
/// Sums are compensated (Neumaier). tol must stay above
/// 1000 * DBL_EPSILON * terms_consumed throughout, otherwise the gap test
/// would be dominated by rounding and precision_exhausted is raised.
SelectionResult select_to_target(TermStream& stream, double beta, double tol,
                                 std::uint64_t budget);

}  // namespace mfsp
