#include "util/error.hpp"

namespace gjsum {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
        case ErrorCode::FieldTooLarge: return "FieldTooLarge";
        case ErrorCode::ZeroArgument: return "ZeroArgument";
        case ErrorCode::NotASubfield: return "NotASubfield";
        case ErrorCode::NotCoprime: return "NotCoprime";
        case ErrorCode::NotInSubfield: return "NotInSubfield";
        case ErrorCode::PrecisionExceeded: return "PrecisionExceeded";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::NotInMuD: return "NotInMuD";
        case ErrorCode::TrivialAdditive: return "TrivialAdditive";
        case ErrorCode::ArityTooSmall: return "ArityTooSmall";
        case ErrorCode::BadDivisor: return "BadDivisor";
        case ErrorCode::NotAdmissible: return "NotAdmissible";
        case ErrorCode::TrivialCharacter: return "TrivialCharacter";
        case ErrorCode::BadModulus: return "BadModulus";
        case ErrorCode::ZeroExponent: return "ZeroExponent";
        case ErrorCode::IntegralityViolation: return "IntegralityViolation";
        case ErrorCode::NotPUnit: return "NotPUnit";
        case ErrorCode::BadParameters: return "BadParameters";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::PreconditionFailed: return "PreconditionFailed";
        case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
        case ErrorCode::Io: return "Io";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace gjsum
