#pragma once

#include <stdexcept>
#include <string>

namespace fermat {

enum class ErrorCode {
    InvalidArgument,
    NotPrime,
    NotOdd,
    SumMismatch,
    DivisibleRST,
    PowerfulDelta,
    BadDeltaValuation,
    PEqualsEll,
    BudgetExceeded,
    ZeroInput,
    NotASubfield,
    TrivialCharacter,
    TrivialProduct,
    NotAUnit,
    NotCoprime,
    BadReduction,
    NonIntegerResult,
    WeilViolation,
    PrecisionExhausted,
    UnitValuationViolation,
    NotRamified,
    CongruenceFailure,
    OracleMismatch,
    InternalAssertion,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

// Internal invariant check; throws InternalAssertion instead of aborting.
inline void ensure(bool condition, const char* what) {
    if (!condition) fail(ErrorCode::InternalAssertion, what);
}

}  // namespace fermat
