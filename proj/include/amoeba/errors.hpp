#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amoeba {

enum class ErrorCode {
  ZeroCoordinate,
  NegativeExponent,
  Overflow,
  DegreeOutOfRange,
  SyntaxError,
  UnknownVariable,
  EmptyInput,
  NoConvergence,
  SingularMatrix,
  IdenticallyZero,
  DegenerateFiber,
  DegenerateSlice,
  InconsistentOrder,
  NotLinear,
  SingularSystem,
  ZeroCoordinateSolution,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Byte span [begin, end) into the parsed text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& what, Span span)
      : Error(code, what), span_(span) {}

  Span span() const noexcept { return span_; }

 private:
  Span span_;
};

}  // namespace amoeba
