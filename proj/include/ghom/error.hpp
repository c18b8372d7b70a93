#ifndef GHOM_ERROR_HPP
#define GHOM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ghom {

enum class ErrorKind {
  MalformedInput,
  DuplicateId,
  DanglingEndpoint,
  UnknownId,
  DimensionMismatch,
  Precondition,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::MalformedInput: return "malformed_input";
    case ErrorKind::DuplicateId: return "duplicate_id";
    case ErrorKind::DanglingEndpoint: return "dangling_endpoint";
    case ErrorKind::UnknownId: return "unknown_id";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::Precondition: return "precondition";
  }
  return "unknown";
}

/// Every failure in the library is reported through this type. `kind()` is
/// stable and machine-readable; `what()` carries the offending id if any.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ghom

#endif
