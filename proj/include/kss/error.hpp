#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kss {

enum class ErrorCode : int {
    NonPositiveElement,
    TargetOverflow,
    CardinalityOverflow,
    DeltaOutOfRange,
    AxisMismatch,
    CapOverflowsMemory,
    InstanceTooLarge,
    NoFeasiblePair,
    NoFeasibleTuple,
    BadArgument,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveElement:   return "NonPositiveElement";
        case ErrorCode::TargetOverflow:       return "TargetOverflow";
        case ErrorCode::CardinalityOverflow:  return "CardinalityOverflow";
        case ErrorCode::DeltaOutOfRange:      return "DeltaOutOfRange";
        case ErrorCode::AxisMismatch:         return "AxisMismatch";
        case ErrorCode::CapOverflowsMemory:   return "CapOverflowsMemory";
        case ErrorCode::InstanceTooLarge:     return "InstanceTooLarge";
        case ErrorCode::NoFeasiblePair:       return "NoFeasiblePair";
        case ErrorCode::NoFeasibleTuple:      return "NoFeasibleTuple";
        case ErrorCode::BadArgument:          return "BadArgument";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace kss
