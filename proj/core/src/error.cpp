#include "fracstab/error.hpp"

namespace fracstab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::convergence: return "convergence";
    case ErrorCode::invalid_order: return "invalid-order";
    case ErrorCode::unsupported_input: return "unsupported-input";
    case ErrorCode::not_commensurable: return "not-commensurable";
    case ErrorCode::pole_at_zero: return "pole-at-zero";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::unsupported_case: return "unsupported-case";
    case ErrorCode::invalid_sector: return "invalid-sector";
    case ErrorCode::invalid_bound: return "invalid-bound";
    case ErrorCode::needs_certification: return "needs-certification";
    case ErrorCode::invalid_multiplier: return "invalid-multiplier";
    case ErrorCode::internal_consistency: return "internal-consistency";
    case ErrorCode::loop_transformation: return "loop-transformation";
    case ErrorCode::on_curve: return "on-curve";
    case ErrorCode::refine_needed: return "refine-needed";
    case ErrorCode::constraint_violation: return "constraint-violation";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::algebraic_loop: return "algebraic-loop";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace fracstab
