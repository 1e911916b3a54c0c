#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chroma {

// Keep in sync with chroma_status in chroma.h (same numeric values).
enum class ErrorCode : int {
    kOk = 0,
    kInvalidArgument = 1,
    kNonRegular = 2,
    kDuplicateEdge = 3,
    kSelfLoop = 4,
    kSizeCap = 5,
    kNotCubic = 6,
    kGenerationTimeout = 7,
    kSigningMismatch = 8,
    kTooLarge = 9,
    kOverlap = 10,
    kZeroDegree = 11,
    kNoConvergence = 12,
    kZeroVector = 13,
    kBindingMismatch = 14,
    kNoGadgetMeta = 15,
    kNotBipartite = 16,
    kBadTau = 17,
    kBadPartSize = 18,
    kMixedBinding = 19,
    kBudgetExhausted = 20,
    kOutOfRange = 21,
    kQTooLarge = 22,
    kPreconditionFail = 23,
    kTooManyClasses = 24,
    kParse = 25,
    kIo = 26,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace chroma
