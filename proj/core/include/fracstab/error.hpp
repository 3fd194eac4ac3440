#pragma once

#include <stdexcept>
#include <string>

namespace fracstab {

enum class ErrorCode {
  invalid_input,
  convergence,
  invalid_order,
  unsupported_input,
  not_commensurable,
  pole_at_zero,
  precondition,
  unsupported_case,
  invalid_sector,
  invalid_bound,
  needs_certification,
  invalid_multiplier,
  internal_consistency,
  loop_transformation,
  on_curve,
  refine_needed,
  constraint_violation,
  divergence,
  algebraic_loop,
  parse_error,
};

[[nodiscard]] const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code lets callers (the CLI in
/// particular) map failures onto exit statuses without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fracstab
