#pragma once

#include <stdexcept>
#include <string>

namespace grouplog {

// Error codes split in two families: contract violations a caller can
// provoke with bad inputs, and bug signals that mean the library itself
// is broken (a theorem guarantees they cannot fire on valid input).
enum class Err {
  InvalidArgument,
  NonUnit,
  PrecisionRaise,
  PrecisionStarved,
  GroupMismatch,
  RingMismatch,
  HomMismatch,
  AmbientMismatch,
  OrderCap,
  NonPPower,
  NotCentral,
  WrongOrder,
  WrongIndex,
  AbelianInput,
  NotInvertible,
  TargetNotInLattice,
  ValuationTooSmall,
  NotOneUnit,
  IsCommutator,
  NotInvariant,
  ParseError,
  // bug signals
  IntegralityViolation,
  NoConvergence,
  IncompleteSearch,
  NonIntegerDecomposition,
  Internal,
};

inline bool is_bug_signal(Err e) {
  switch (e) {
    case Err::IntegralityViolation:
    case Err::NoConvergence:
    case Err::IncompleteSearch:
    case Err::NonIntegerDecomposition:
    case Err::Internal:
      return true;
    default:
      return false;
  }
}

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }
  bool is_bug() const { return is_bug_signal(code_); }

 private:
  Err code_;
};

// Parse errors carry the offset of the offending character (1-based in the
// rendered message, matching caret positions).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : Error(Err::ParseError, what + " at position " + std::to_string(pos + 1)), pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Err code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace grouplog
