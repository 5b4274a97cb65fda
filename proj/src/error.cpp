#include "riskched/error.hpp"

namespace riskched {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInstance: return "InvalidInstance";
        case ErrorCode::InvalidDistribution: return "InvalidDistribution";
        case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
        case ErrorCode::LpFailure: return "LpFailure";
        case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::NotUnitTime: return "NotUnitTime";
        case ErrorCode::HasPrecedence: return "HasPrecedence";
        case ErrorCode::WrongObjective: return "WrongObjective";
        case ErrorCode::NonIntegerData: return "NonIntegerData";
        case ErrorCode::UnsupportedData: return "UnsupportedData";
        case ErrorCode::DegenerateFormula: return "DegenerateFormula";
        case ErrorCode::InvalidFormula: return "InvalidFormula";
        case ErrorCode::InvalidParameter: return "InvalidParameter";
    }
    return "Unknown";
}

}  // namespace riskched
