#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace assograph {

enum class ErrorCode {
  invalid_argument,
  parse_error,
  duplicate_id,
  not_found,
  precondition,
  io_error,
  too_large,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code; the
/// HTTP layer maps codes to status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace assograph
