#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace higgs {

enum class ErrorKind {
  ZeroLeadingCoefficient,
  PrecisionError,
  NonzeroConstantTerm,
  NoConvergence,
  NotInvertible,
  NotSeparable,
  ResidualFieldExtensionRequired,
  NotEisenstein,
  NoSuchElement,
  WindowUnstable,
  UnknownFixture,
  NotTotallyRamified,
  NoCyclicVector,
  NotDivisible,
  InvalidArgument,
  ParseError,
};

std::string_view error_name(ErrorKind kind) noexcept;

/// Every failure in the library surfaces as this exception; `kind()` carries
/// the machine-readable category that the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace higgs
