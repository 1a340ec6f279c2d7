#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mfsp {

enum class ErrorKind {
  unsupported_input,
  coprimality_violation,
  positivity_violation,
  precondition,
  class_mismatch,
  box_violation,
  class_membership,
  budget_exhausted,
  precision_exhausted,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library. The stage is filled in by the
// pipeline driver so a caller can tell which step rejected its input.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }
  void set_stage(std::string stage) { stage_ = std::move(stage); }

 private:
  ErrorKind kind_;
  std::string stage_;
};

}  // namespace mfsp
