#include "balloons/error.hpp"

namespace balloons {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::size_guard: return "size-guard";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::outside_region: return "outside-region";
    case ErrorCode::numerical_failure: return "numerical-failure";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace balloons
