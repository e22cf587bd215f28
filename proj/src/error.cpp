#include "assograph/error.hpp"

namespace assograph {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::duplicate_id: return "duplicate_id";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::too_large: return "too_large";
  }
  return "invalid_argument";
}

}  // namespace assograph
