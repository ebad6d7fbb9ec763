#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace papertrail {

enum class ErrorCode {
    MissingRequiredColumn,
    CorpusRejected,
    InvalidInput,
    NotAnEmail,
    ConflictingMerge,
    AllZero,
    NonPositiveComponent,
    FewerThanTwoPoints,
    KOutOfRange,
    SingleCluster,
    DegenerateData,
    EmptyCurves,
    EmptyCluster,
    EmptyCorpus,
    NodeNotFound,
    MissingRate,
    UnsupportedFormat,
    InvalidSpec,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Data error raised by library operations. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace papertrail
