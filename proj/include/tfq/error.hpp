#pragma once

#include <stdexcept>
#include <string>

namespace tfq {

enum class ErrorCode {
    invalid_group,
    invalid_subgroup,
    domain_mismatch,
    invalid_window,
    unsupported_subgroup,
    shape_error,
    parse_error,
};

// Library-wide exception carrying a machine-readable code; the CLI maps
// codes onto process exit codes.
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

}  // namespace tfq
