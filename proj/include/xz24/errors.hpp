#pragma once

#include <stdexcept>
#include <string>

namespace xz24 {

enum class ErrorCode {
  invalid_argument,
  parse_error,
  dimension_error,
  numeric_error,
  io_error,
};

/// Library-wide exception. Every failure surfaced by the public API carries a
/// code (stable across the C boundary) and a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) {
  throw Error(ErrorCode::invalid_argument, msg);
}
[[noreturn]] inline void throw_parse(const std::string& msg) {
  throw Error(ErrorCode::parse_error, msg);
}
[[noreturn]] inline void throw_dimension(const std::string& msg) {
  throw Error(ErrorCode::dimension_error, msg);
}

}  // namespace xz24
