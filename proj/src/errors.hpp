#pragma once

#include <stdexcept>
#include <string>

namespace eiskron {

// Error codes shared between the C++ core and the C API surface.
enum class Err : int {
    Ok = 0,
    IncompatibleStructures = 1,
    DivisionByZeroAtPrecision = 2,
    NotAUnit = 3,
    ConvergenceDomainViolated = 4,
    LevelMismatch = 5,
    LatticeMismatch = 6,
    PrecisionInsufficient = 7,
    TruncationOverflow = 8,
    MissingCharacterValue = 9,
    UnsupportedClassNumber = 10,
    NotCoprimeToConductor = 11,
    DegenerateDecomposition = 12,
    NotGammaInvariant = 13,
    ConvergenceNotGuaranteed = 14,
    UnsupportedField = 15,
    RecognitionFailed = 16,
    CoprimalityViolation = 17,
    LevelTooSmall = 18,
    NonOrdinaryUnsupported = 19,
    ConfigInvalid = 20,
    Internal = 21,
};

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

inline const char* err_name(Err e) {
    switch (e) {
        case Err::Ok: return "Ok";
        case Err::IncompatibleStructures: return "IncompatibleStructures";
        case Err::DivisionByZeroAtPrecision: return "DivisionByZeroAtPrecision";
        case Err::NotAUnit: return "NotAUnit";
        case Err::ConvergenceDomainViolated: return "ConvergenceDomainViolated";
        case Err::LevelMismatch: return "LevelMismatch";
        case Err::LatticeMismatch: return "LatticeMismatch";
        case Err::PrecisionInsufficient: return "PrecisionInsufficient";
        case Err::TruncationOverflow: return "TruncationOverflow";
        case Err::MissingCharacterValue: return "MissingCharacterValue";
        case Err::UnsupportedClassNumber: return "UnsupportedClassNumber";
        case Err::NotCoprimeToConductor: return "NotCoprimeToConductor";
        case Err::DegenerateDecomposition: return "DegenerateDecomposition";
        case Err::NotGammaInvariant: return "NotGammaInvariant";
        case Err::ConvergenceNotGuaranteed: return "ConvergenceNotGuaranteed";
        case Err::UnsupportedField: return "UnsupportedField";
        case Err::RecognitionFailed: return "RecognitionFailed";
        case Err::CoprimalityViolation: return "CoprimalityViolation";
        case Err::LevelTooSmall: return "LevelTooSmall";
        case Err::NonOrdinaryUnsupported: return "NonOrdinaryUnsupported";
        case Err::ConfigInvalid: return "ConfigInvalid";
        case Err::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace eiskron
