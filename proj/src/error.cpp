#include "djc/error.hpp"

namespace djc {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeCoupling: return "NegativeCoupling";
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::PresetBasisMismatch: return "PresetBasisMismatch";
        case ErrorCode::UnnormalizedCustomInput: return "UnnormalizedCustomInput";
        case ErrorCode::WrongBasis: return "WrongBasis";
        case ErrorCode::NotResonant: return "NotResonant";
        case ErrorCode::UnequalCouplings: return "UnequalCouplings";
        case ErrorCode::RegimeMismatch: return "RegimeMismatch";
        case ErrorCode::CutoffTooSmall: return "CutoffTooSmall";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::CavityNotQubitLike: return "CavityNotQubitLike";
        case ErrorCode::NotADensityMatrix: return "NotADensityMatrix";
        case ErrorCode::NotXForm: return "NotXForm";
        case ErrorCode::InternalConsistency: return "InternalConsistency";
        case ErrorCode::GridTooCoarse: return "GridTooCoarse";
        case ErrorCode::CellBudgetExceeded: return "CellBudgetExceeded";
        case ErrorCode::ConfigConflict: return "ConfigConflict";
        case ErrorCode::UsageError: return "UsageError";
        case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

}  // namespace djc
