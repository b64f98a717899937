#pragma once

#include <stdexcept>
#include <string>

namespace hodge {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HODGE_DEFINE_ERROR(Name)        \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

HODGE_DEFINE_ERROR(ShapeMismatch);
HODGE_DEFINE_ERROR(DegreeMismatch);
HODGE_DEFINE_ERROR(SpaceMismatch);
HODGE_DEFINE_ERROR(NotContained);
HODGE_DEFINE_ERROR(NotWellDefined);
HODGE_DEFINE_ERROR(NotSquareZero);
HODGE_DEFINE_ERROR(NotInvertible);
HODGE_DEFINE_ERROR(SourceTargetMismatch);
HODGE_DEFINE_ERROR(InvalidMulticomplex);
HODGE_DEFINE_ERROR(BadConstantTerm);
HODGE_DEFINE_ERROR(HodgeDataFails);
HODGE_DEFINE_ERROR(NotPoisson);
HODGE_DEFINE_ERROR(NotJacobi);
HODGE_DEFINE_ERROR(WindowTooSmall);
HODGE_DEFINE_ERROR(InvariantViolation);

#undef HODGE_DEFINE_ERROR

/// Input error carrying a 1-based line/column position; line 0 marks an
/// error that is not tied to a position (a missing or ill-typed field).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line == 0 ? what
                        : what + " (line " + std::to_string(line) + ", column " +
                              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hodge
