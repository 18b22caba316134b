#include "coxl2/error.hpp"
#include "coxl2/exec.hpp"

#include <omp.h>

namespace coxl2 {

std::string_view error_code_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::ConflictingEdge: return "ConflictingEdge";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::IndeterminateNumeric: return "IndeterminateNumeric";
    case ErrorCode::NumericCollision: return "NumericCollision";
    case ErrorCode::ContradictoryRules: return "ContradictoryRules";
    case ErrorCode::UnknownEntries: return "UnknownEntries";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::FiniteGroup: return "FiniteGroup";
    case ErrorCode::DimensionTooHigh: return "DimensionTooHigh";
    case ErrorCode::NotSpherical: return "NotSpherical";
    case ErrorCode::NonSimpleFaceBoundary: return "NonSimpleFaceBoundary";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code)
{
}

void set_thread_count(int n)
{
    if (n > 0)
        omp_set_num_threads(n);
}

int thread_count()
{
    return omp_get_max_threads();
}

} // namespace coxl2
