#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace colltrip {

enum class ErrorKind {
  NotInvertible,
  NonPrimeModulus,
  DegeneratePair,
  DegenerateInput,
  DegenerateParams,
  BadResidueClass,
  BoundExceeded,
  OutOfRange,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::DegenerateParams: return "DegenerateParams";
    case ErrorKind::BadResidueClass: return "BadResidueClass";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// Every precondition failure in the library is reported as an Error
// carrying the kind, so callers can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace colltrip
