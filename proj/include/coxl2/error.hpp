#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coxl2 {

enum class ErrorCode {
    MalformedDocument,
    DuplicateVertex,
    ConflictingEdge,
    LabelOutOfRange,
    InvalidLabel,
    UnknownVertex,
    CapExceeded,
    TooLarge,
    IndeterminateNumeric,
    NumericCollision,
    ContradictoryRules,
    UnknownEntries,
    InvalidWitness,
    FiniteGroup,
    DimensionTooHigh,
    NotSpherical,
    NonSimpleFaceBoundary,
    HypothesisViolated,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace coxl2
