#pragma once

#include <stdexcept>
#include <string>

namespace qsplit {

enum class ErrorCode {
    NonSquare,
    NotHermitian,
    NotPsd,
    DimMismatch,
    LengthMismatch,
    AngleOutOfRange,
    NotNormalized,
    IndexOutOfRange,
    DuplicateState,
    EmptyFamily,
    Infeasible,
    GramMismatch,
    RankDeficient,
    ZeroSuperposition,
    Parse,
    Io,
    Numerical,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace qsplit
