#pragma once

#include <stdexcept>
#include <string>

namespace gschw {

enum class ErrorKind {
  invalid_argument,
  singular_denominator,
  critical_point,
  mobius_singularity,
  degenerate,
  pole,
  approaching_critical_point,
  blow_up,
  gauge_singular,
  not_a_loop,
  parse,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the numerical core carries one of the kinds above so
// that the C API can translate it into a status code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gschw
