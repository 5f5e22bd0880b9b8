#pragma once

#include <stdexcept>
#include <string>

namespace bjorling {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Expression grammar violations.
struct SyntaxError : Error {
  std::size_t position;
  std::string expected;
  SyntaxError(std::size_t pos, const std::string& exp, const std::string& got)
      : Error("syntax error at position " + std::to_string(pos) + ": expected " + exp +
              ", got " + got),
        position(pos),
        expected(exp) {}
};

struct UnsupportedExpression : Error {
  using Error::Error;
};

struct DivisionByNonConstant : Error {
  using Error::Error;
};

struct EvalOverflow : Error {
  using Error::Error;
};

// Frame construction.
struct DegenerateQuaternion : Error {
  using Error::Error;
};
struct NotRealOnAxis : Error {
  using Error::Error;
};
struct FrameInvariantViolation : Error {
  using Error::Error;
};
struct ZeroLambda : Error {
  using Error::Error;
};
struct QuotientMismatch : Error {
  using Error::Error;
};
struct LambdaVanishes : Error {
  using Error::Error;
};
struct DegenerateCurve : Error {
  using Error::Error;
};

// Weierstrass analysis.
struct NotSubstitutable : Error {
  int suggested_denominator;  // minimal feasible d, or 0 if none <= 64
  NotSubstitutable(const std::string& msg, int suggested = 0)
      : Error(msg), suggested_denominator(suggested) {}
};

// Catalog and CLI.
struct UnknownCurve : Error {
  using Error::Error;
};
struct MissingParam : Error {
  using Error::Error;
};
struct InvalidLambda : Error {
  using Error::Error;
};
struct UnknownExample : Error {
  using Error::Error;
};
struct IOFailure : Error {
  using Error::Error;
};

// Numeric oracles.
struct SingularPointError : Error {
  using Error::Error;
};
struct DomainTooLarge : Error {
  using Error::Error;
};

}  // namespace bjorling
