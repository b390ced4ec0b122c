#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plift {

enum class ErrorKind {
  IndexOutOfRange,
  SizeMismatch,
  KTooLarge,
  MissingVariable,
  DuplicateAbscissa,
  NotAForest,
  DegenerateParameterCollision,
  AllZeroLift,
  CenterOnLine,
  PointAtCenter,
  PointAtChartInfinity,
  SingularTransform,
  ZeroScale,
  InvalidLine,
  InvalidColumn,
  NonSimpleInput,
  InvalidConfig,
  UnknownFormat,
  ParseError,
  RetryBudgetExhausted,
  TooLarge,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace plift
