#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace riskched {

enum class ErrorCode {
    InvalidInstance,
    InvalidDistribution,
    AlphaOutOfRange,
    LpFailure,
    NumericalBreakdown,
    TooLarge,
    NotUnitTime,
    HasPrecedence,
    WrongObjective,
    NonIntegerData,
    UnsupportedData,
    DegenerateFormula,
    InvalidFormula,
    InvalidParameter,
};

std::string_view to_string(ErrorCode code);

/// Exception thrown by every library operation that can fail.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

    ErrorCode code() const noexcept { return code_; }
    /// Message without the code prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace riskched
