#pragma once

#include <stdexcept>
#include <string>

namespace swanson {

enum class ErrorKind {
  InvalidArgument,
  DegenerateMap,
  BoundaryCase,
  WrongRegion,
  SingularFactorization,
  NonFinite,
  ZeroCrossing,
  PoleAtSinZero,
  OutOfDomain,
  Overflow,
  NonHermitian,
  StepTooLarge,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace swanson
