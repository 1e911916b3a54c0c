#include "chroma/error.hpp"

namespace chroma {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kOk: return "Ok";
        case ErrorCode::kInvalidArgument: return "InvalidArgument";
        case ErrorCode::kNonRegular: return "NonRegular";
        case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
        case ErrorCode::kSelfLoop: return "SelfLoop";
        case ErrorCode::kSizeCap: return "SizeCap";
        case ErrorCode::kNotCubic: return "NotCubic";
        case ErrorCode::kGenerationTimeout: return "GenerationTimeout";
        case ErrorCode::kSigningMismatch: return "SigningMismatch";
        case ErrorCode::kTooLarge: return "TooLarge";
        case ErrorCode::kOverlap: return "Overlap";
        case ErrorCode::kZeroDegree: return "ZeroDegree";
        case ErrorCode::kNoConvergence: return "NoConvergence";
        case ErrorCode::kZeroVector: return "ZeroVector";
        case ErrorCode::kBindingMismatch: return "BindingMismatch";
        case ErrorCode::kNoGadgetMeta: return "NoGadgetMeta";
        case ErrorCode::kNotBipartite: return "NotBipartite";
        case ErrorCode::kBadTau: return "BadTau";
        case ErrorCode::kBadPartSize: return "BadPartSize";
        case ErrorCode::kMixedBinding: return "MixedBinding";
        case ErrorCode::kBudgetExhausted: return "BudgetExhausted";
        case ErrorCode::kOutOfRange: return "OutOfRange";
        case ErrorCode::kQTooLarge: return "QTooLarge";
        case ErrorCode::kPreconditionFail: return "PreconditionFail";
        case ErrorCode::kTooManyClasses: return "TooManyClasses";
        case ErrorCode::kParse: return "Parse";
        case ErrorCode::kIo: return "Io";
    }
    return "Unknown";
}

}  // namespace chroma
