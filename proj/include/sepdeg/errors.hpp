#pragma once

#include <stdexcept>
#include <string>

namespace sepdeg {

/// Error categories surfaced by the library. CLI maps input problems to
/// exit code 2 and resource/engine failures to exit code 3.
enum class Errc {
  NonPrime,
  ReducibleModulus,
  BadDegree,
  DivisionByZero,
  FieldMismatch,
  NoSuchRoot,
  ShapeMismatch,
  Singular,
  ArityMismatch,
  DegreeMismatch,
  BadParameter,
  LabelMismatch,
  UnknownGenerator,
  NotUnipotent,
  CapExceeded,
  ZeroPoint,
  NotSeparated,
  PointBudgetExceeded,
  NotCyclicJordan,
  EmptySupport,
  NotFaithful,
  NotPGroup,
  BadGroupOrder,
  TrivialModule,
  UnknownTable,
  BudgetExceeded,
  ParseError,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void check(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

/// Resource and consistency failures, as opposed to problems with the input.
/// These abort a verification run instead of producing a fail verdict.
inline bool is_engine_error(Errc code) {
  switch (code) {
    case Errc::CapExceeded:
    case Errc::PointBudgetExceeded:
    case Errc::BudgetExceeded:
    case Errc::NotSeparated:
    case Errc::DivisionByZero:
    case Errc::ShapeMismatch:
    case Errc::Singular:
    case Errc::NotUnipotent:
    case Errc::Internal:
      return true;
    default:
      return false;
  }
}

}  // namespace sepdeg
