#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace slowlight {

/// Failure category. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
    Validation = 2,
    Numeric = 3,
    Io = 4,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_validation(const std::string& message) {
    throw Error(ErrorKind::Validation, message);
}

[[noreturn]] inline void fail_numeric(const std::string& message) {
    throw Error(ErrorKind::Numeric, message);
}

[[noreturn]] inline void fail_io(const std::string& message) {
    throw Error(ErrorKind::Io, message);
}

}  // namespace slowlight
