#pragma once

#include <stdexcept>
#include <string>

namespace urank {

// Stable failure categories; the C layer maps these 1:1 onto urank_status.
enum class ErrorCode {
  invalid_argument,
  parse,
  isolated_vertex,
  dimension_mismatch,
  unsatisfiable,
  cap_exceeded,
  precondition,
  io,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace urank
