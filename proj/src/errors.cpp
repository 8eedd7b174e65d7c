#include "fermat/errors.hpp"

namespace fermat {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotOdd: return "NotOdd";
    case ErrorCode::SumMismatch: return "SumMismatch";
    case ErrorCode::DivisibleRST: return "DivisibleRST";
    case ErrorCode::PowerfulDelta: return "PowerfulDelta";
    case ErrorCode::BadDeltaValuation: return "BadDeltaValuation";
    case ErrorCode::PEqualsEll: return "PEqualsEll";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::NotASubfield: return "NotASubfield";
    case ErrorCode::TrivialCharacter: return "TrivialCharacter";
    case ErrorCode::TrivialProduct: return "TrivialProduct";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::BadReduction: return "BadReduction";
    case ErrorCode::NonIntegerResult: return "NonIntegerResult";
    case ErrorCode::WeilViolation: return "WeilViolation";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::UnitValuationViolation: return "UnitValuationViolation";
    case ErrorCode::NotRamified: return "NotRamified";
    case ErrorCode::CongruenceFailure: return "CongruenceFailure";
    case ErrorCode::OracleMismatch: return "OracleMismatch";
    case ErrorCode::InternalAssertion: return "InternalAssertion";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace fermat
