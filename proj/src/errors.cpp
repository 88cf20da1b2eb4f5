#include "higgs/errors.hpp"

namespace higgs {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorKind::PrecisionError: return "PrecisionError";
    case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotSeparable: return "NotSeparable";
    case ErrorKind::ResidualFieldExtensionRequired: return "ResidualFieldExtensionRequired";
    case ErrorKind::NotEisenstein: return "NotEisenstein";
    case ErrorKind::NoSuchElement: return "NoSuchElement";
    case ErrorKind::WindowUnstable: return "WindowUnstable";
    case ErrorKind::UnknownFixture: return "UnknownFixture";
    case ErrorKind::NotTotallyRamified: return "NotTotallyRamified";
    case ErrorKind::NoCyclicVector: return "NoCyclicVector";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace higgs
