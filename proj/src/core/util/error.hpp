#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gjsum {

enum class ErrorCode {
    InvalidArgument,
    NotPrime,
    DegreeOutOfRange,
    FieldTooLarge,
    ZeroArgument,
    NotASubfield,
    NotCoprime,
    NotInSubfield,
    PrecisionExceeded,
    FieldMismatch,
    NotInMuD,
    TrivialAdditive,
    ArityTooSmall,
    BadDivisor,
    NotAdmissible,
    TrivialCharacter,
    BadModulus,
    ZeroExponent,
    IntegralityViolation,
    NotPUnit,
    BadParameters,
    BudgetExceeded,
    PreconditionFailed,
    ArithmeticOverflow,
    Io,
    Internal,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace gjsum
