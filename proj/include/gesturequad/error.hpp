#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gq {

enum class ErrorCode {
    DegenerateVector,
    MissingKeypoint,
    IllegalTransition,
    InvalidPosture,
    ClockRegression,
    OrderViolation,
    CorruptRecord,
    ProtocolViolation,
    Busy,
    OutOfRangeAnswer,
    WrongItemCount,
    InsufficientData,
    EmptyDataset,
    InvalidConfig,
    InvalidArgument,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Every library error carries a stable code so the CLI can map it to a
/// single-line diagnostic.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace gq
