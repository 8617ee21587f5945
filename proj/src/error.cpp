#include "swanson/error.hpp"

namespace swanson {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::BoundaryCase: return "BoundaryCase";
    case ErrorKind::WrongRegion: return "WrongRegion";
    case ErrorKind::SingularFactorization: return "SingularFactorization";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ZeroCrossing: return "ZeroCrossing";
    case ErrorKind::PoleAtSinZero: return "PoleAtSinZero";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace swanson
