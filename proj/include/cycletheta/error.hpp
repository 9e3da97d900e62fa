#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cycletheta {

enum class ErrorKind {
  NotSymmetric,
  NotEven,
  Degenerate,
  NotPositiveDefinite,
  InvalidArgument,
  InsufficientTruncation,
  RelationViolated,
  BoundNotStabilized,
  MismatchDetected,
  UnsupportedWeight,
  NotStabilized,
  Unsupported,
};

std::string_view error_name(ErrorKind kind);

/// Every library failure is reported through this type. what() starts with
/// the error name so that messages stay greppable from the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cycletheta
