#pragma once

#include <stdexcept>
#include <string>

namespace charvar {

enum class ErrorCode {
    InvalidElement,
    NotPositiveDefinite,
    SpectrumMismatch,
    NotDiagonalizable,
    DimensionMismatch,
    ShapeMismatch,
    IndexOutOfRange,
    TooFewFactors,
    NotRegular,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidElement: return "InvalidElement";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::SpectrumMismatch: return "SpectrumMismatch";
        case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::TooFewFactors: return "TooFewFactors";
        case ErrorCode::NotRegular: return "NotRegular";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Default validation tolerance for the element types (determinant-one,
/// unitarity, Hermitian-ness, tracelessness).
inline constexpr double kValidTol = 1e-10;

/// Relative cutoff for numeric rank / null-space decisions.
inline constexpr double kRankTol = 1e-8;

/// Eigenvalue gap below which spectra are treated as degenerate.
inline constexpr double kClusterTol = 1e-8;

}  // namespace charvar
