#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heredilat {

/// Base of every error thrown by the library. Carries an optional list of
/// element ids (or trial indices) that witness the failure.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, std::vector<std::size_t> witness = {})
        : std::runtime_error(what), witness_(std::move(witness)) {}

    const std::vector<std::size_t>& witness() const noexcept { return witness_; }

private:
    std::vector<std::size_t> witness_;
};

#define HEREDILAT_ERROR(Name)                \
    class Name : public Error {              \
    public:                                  \
        using Error::Error;                  \
    }

// order kernel
HEREDILAT_ERROR(CycleError);
HEREDILAT_ERROR(NoBoundsError);
HEREDILAT_ERROR(NotALatticeError);
HEREDILAT_ERROR(OrthoAxiomError);
HEREDILAT_ERROR(PropositionViolation);

// decompositions
HEREDILAT_ERROR(CenterNotClosedError);
HEREDILAT_ERROR(CoverOverlapError);
HEREDILAT_ERROR(IsoFailure);
HEREDILAT_ERROR(NoCandidateError);
HEREDILAT_ERROR(MultipleCandidateError);

// matrix algebras
HEREDILAT_ERROR(DimCapError);
HEREDILAT_ERROR(ShapeError);
HEREDILAT_ERROR(NotAProjectionError);
HEREDILAT_ERROR(NotHermitianError);
HEREDILAT_ERROR(NotNilpotentError);

// spectral lab
HEREDILAT_ERROR(DomainError);
HEREDILAT_ERROR(PreconditionError);
HEREDILAT_ERROR(OverlapTooLargeError);
HEREDILAT_ERROR(ConstructionFailure);
HEREDILAT_ERROR(NotStrictlyContainedError);

// io
HEREDILAT_ERROR(ParseError);
HEREDILAT_ERROR(ValidationError);

#undef HEREDILAT_ERROR

}  // namespace heredilat
