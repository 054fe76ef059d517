#include "l2approx/error.hpp"

namespace l2approx {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MismatchedGroup: return "MismatchedGroup";
    case ErrorKind::UndefinedGenerator: return "UndefinedGenerator";
    case ErrorKind::InfiniteGroup: return "InfiniteGroup";
    case ErrorKind::InvalidGroup: return "InvalidGroup";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::WrongGroup: return "WrongGroup";
    case ErrorKind::RootFindFailure: return "RootFindFailure";
    case ErrorKind::CertificationFailed: return "CertificationFailed";
    case ErrorKind::InsufficientLevels: return "InsufficientLevels";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotInverse: return "NotInverse";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::TorsionUndefined: return "TorsionUndefined";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace l2approx
