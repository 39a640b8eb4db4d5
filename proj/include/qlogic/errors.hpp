#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlogic {

enum class ErrorKind {
    InvalidInput,
    NotAPartialOrder,
    AxiomViolation,
    NoBounds,
    OrthoNotInvolutive,
    NoSupremum,
    NoInfimum,
    SearchBudgetExceeded,
    EmptyStateSpace,
    VertexBudgetExceeded,
    ZeroCondition,
    Undefined,
    NotAnAtom,
    NotUnique,
    EquivalenceViolated,
    NotOrderPreserving,
    OrthoNotPreserved,
    UnitNotPreserved,
    LemmaViolated,
    NotBoolean,
    PreconditionFailed,
    ConstructionFailed,
    CertificateFailed,
    DimensionMismatch,
    CheckFailed,
    UnknownFixture,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::NotAPartialOrder: return "NotAPartialOrder";
        case ErrorKind::AxiomViolation: return "AxiomViolation";
        case ErrorKind::NoBounds: return "NoBounds";
        case ErrorKind::OrthoNotInvolutive: return "OrthoNotInvolutive";
        case ErrorKind::NoSupremum: return "NoSupremum";
        case ErrorKind::NoInfimum: return "NoInfimum";
        case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case ErrorKind::EmptyStateSpace: return "EmptyStateSpace";
        case ErrorKind::VertexBudgetExceeded: return "VertexBudgetExceeded";
        case ErrorKind::ZeroCondition: return "ZeroCondition";
        case ErrorKind::Undefined: return "Undefined";
        case ErrorKind::NotAnAtom: return "NotAnAtom";
        case ErrorKind::NotUnique: return "NotUnique";
        case ErrorKind::EquivalenceViolated: return "EquivalenceViolated";
        case ErrorKind::NotOrderPreserving: return "NotOrderPreserving";
        case ErrorKind::OrthoNotPreserved: return "OrthoNotPreserved";
        case ErrorKind::UnitNotPreserved: return "UnitNotPreserved";
        case ErrorKind::LemmaViolated: return "LemmaViolated";
        case ErrorKind::NotBoolean: return "NotBoolean";
        case ErrorKind::PreconditionFailed: return "PreconditionFailed";
        case ErrorKind::ConstructionFailed: return "ConstructionFailed";
        case ErrorKind::CertificateFailed: return "CertificateFailed";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::CheckFailed: return "CheckFailed";
        case ErrorKind::UnknownFixture: return "UnknownFixture";
    }
    return "Unknown";
}

/// Every failure raised by the library. `witness` carries element indices
/// (or other small integers) that locate the failure; `axiom` is set for
/// AxiomViolation ('A'..'E').
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message,
          std::vector<std::size_t> witness = {}, char axiom = '\0')
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind),
          witness_(std::move(witness)),
          axiom_(axiom) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::vector<std::size_t>& witness() const noexcept { return witness_; }
    char axiom() const noexcept { return axiom_; }

private:
    ErrorKind kind_;
    std::vector<std::size_t> witness_;
    char axiom_;
};

}  // namespace qlogic
