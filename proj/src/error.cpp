#include "grouplog/error.hpp"

namespace grouplog {

const char* err_name(Err e) {
  switch (e) {
    case Err::InvalidArgument: return "InvalidArgument";
    case Err::NonUnit: return "NonUnit";
    case Err::PrecisionRaise: return "PrecisionRaise";
    case Err::PrecisionStarved: return "PrecisionStarved";
    case Err::GroupMismatch: return "GroupMismatch";
    case Err::RingMismatch: return "RingMismatch";
    case Err::HomMismatch: return "HomMismatch";
    case Err::AmbientMismatch: return "AmbientMismatch";
    case Err::OrderCap: return "OrderCap";
    case Err::NonPPower: return "NonPPower";
    case Err::NotCentral: return "NotCentral";
    case Err::WrongOrder: return "WrongOrder";
    case Err::WrongIndex: return "WrongIndex";
    case Err::AbelianInput: return "AbelianInput";
    case Err::NotInvertible: return "NotInvertible";
    case Err::TargetNotInLattice: return "TargetNotInLattice";
    case Err::ValuationTooSmall: return "ValuationTooSmall";
    case Err::NotOneUnit: return "NotOneUnit";
    case Err::IsCommutator: return "IsCommutator";
    case Err::NotInvariant: return "NotInvariant";
    case Err::ParseError: return "ParseError";
    case Err::IntegralityViolation: return "IntegralityViolation";
    case Err::NoConvergence: return "NoConvergence";
    case Err::IncompleteSearch: return "IncompleteSearch";
    case Err::NonIntegerDecomposition: return "NonIntegerDecomposition";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace grouplog
