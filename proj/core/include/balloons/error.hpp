#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace balloons {

enum class ErrorCode {
  invalid_argument,
  invalid_input,
  unsupported,
  size_guard,
  infeasible,
  outside_region,
  numerical_failure,
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a machine-readable code so the
// CLI can report it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const char* message) {
  if (!condition) fail(code, message);
}

}  // namespace balloons
