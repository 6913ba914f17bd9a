#pragma once

#include <stdexcept>
#include <string>

namespace ajt {

enum class ErrorKind {
  ZeroBase,
  ZeroDivisor,
  InvalidKnot,
  InvalidParams,
  InadmissibleParams,
  InsufficientSamples,
  DegenerateNodes,
  NotSymmetric,
  ParseError,
  SequenceUndefined,
  ResourceBound,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` carries the contract-level error name.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ajt
