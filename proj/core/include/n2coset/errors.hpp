#pragma once

#include <stdexcept>
#include <string>

namespace n2coset {

/* Guarded mathematical failure modes. These are conditions a caller can
 * trigger with structurally valid but mathematically inadmissible input,
 * as opposed to programming errors (which use assertions). */
enum class Errc {
    NonInvertibleLeadingTerm,
    NonIntegralSignExponent,
    NonTerminating,
    LabelOutOfRange,
    ParityMismatch,
    RegimeMismatch,
    DivergentResolution,
    RegimeViolation,
    NoKnownExactRule,
    BadInput,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonInvertibleLeadingTerm: return "NonInvertibleLeadingTerm";
        case Errc::NonIntegralSignExponent: return "NonIntegralSignExponent";
        case Errc::NonTerminating: return "NonTerminating";
        case Errc::LabelOutOfRange: return "LabelOutOfRange";
        case Errc::ParityMismatch: return "ParityMismatch";
        case Errc::RegimeMismatch: return "RegimeMismatch";
        case Errc::DivergentResolution: return "DivergentResolution";
        case Errc::RegimeViolation: return "RegimeViolation";
        case Errc::NoKnownExactRule: return "NoKnownExactRule";
        case Errc::BadInput: return "BadInput";
    }
    return "Unknown";
}

class MathError : public std::runtime_error {
  public:
    MathError(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

}  // namespace n2coset
