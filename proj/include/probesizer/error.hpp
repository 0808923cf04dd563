#pragma once

#include <stdexcept>
#include <string>

namespace probesizer {

// Error categories, aligned with the CLI exit codes and the C API status
// values (0 is reserved for success).
enum class ErrorCode : int {
    Internal = 1,
    Validation = 2,
    Collapsed = 3,
    Io = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail_validation(const std::string& message) {
    throw Error(ErrorCode::Validation, message);
}

[[noreturn]] inline void fail_collapsed(const std::string& message) {
    throw Error(ErrorCode::Collapsed, message);
}

[[noreturn]] inline void fail_io(const std::string& message) {
    throw Error(ErrorCode::Io, message);
}

}  // namespace probesizer
