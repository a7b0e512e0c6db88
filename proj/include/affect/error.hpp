#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace affect {

/// Broad failure class; each maps onto one CLI exit code.
enum class ErrorCategory {
    Config = 2,
    Data = 3,
    Numerical = 4,
};

enum class ErrorCode {
    // configuration / ordering
    InvalidArgument,
    MissingFile,
    MissingBundle,
    MissingModel,
    // data
    EmptyList,
    InvalidToken,
    AmbiguousDelimiter,
    OutOfScale,
    NonNumeric,
    RaggedRow,
    NoOverlap,
    EmptySet,
    SampleTooSmall,
    InsufficientMatch,
    DimensionMismatch,
    NonFinite,
    InsufficientOverlap,
    MissingFeature,
    TooFewPoints,
    LabelTie,
    ZeroLength,
    EmptyCorpus,
    MalformedRecord,
    SeriesTooShort,
    ConstantSeries,
    InsufficientObservations,
    MissingValue,
    // numerical
    TrainingDiverged,
    ZeroVariance,
    DegenerateCovariance,
    SingularMatrix,
    CollinearRegressors,
    RankTooLarge,
    NotPositiveDefinite,
    NumericOverflow,
    BootstrapFailure,
};

[[nodiscard]] constexpr ErrorCategory category_of(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::MissingFile:
    case ErrorCode::MissingBundle:
    case ErrorCode::MissingModel:
        return ErrorCategory::Config;
    case ErrorCode::TrainingDiverged:
    case ErrorCode::ZeroVariance:
    case ErrorCode::DegenerateCovariance:
    case ErrorCode::SingularMatrix:
    case ErrorCode::CollinearRegressors:
    case ErrorCode::RankTooLarge:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::NumericOverflow:
    case ErrorCode::BootstrapFailure:
        return ErrorCategory::Numerical;
    default:
        return ErrorCategory::Data;
    }
}

[[nodiscard]] std::string_view code_name(ErrorCode code) noexcept;

/// Exception type thrown by every module. `code()` identifies the precise
/// failure, `category()` the exit-code class.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(code_name(code)) + ": " + message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] ErrorCategory category() const noexcept { return category_of(code_); }
    [[nodiscard]] int exit_code() const noexcept { return static_cast<int>(category()); }

private:
    ErrorCode code_;
};

}  // namespace affect
