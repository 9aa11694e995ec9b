#pragma once

// Error hierarchy shared by the library and the command line tool.
//
// Each failure class carries a fixed process exit code so scripted callers
// can distinguish bad input (2), refused oversize work (3), lost numeric
// certification (4) and violated mathematical invariants (5).

#include <stdexcept>
#include <string>

namespace lefschetz {

class error : public std::runtime_error {
public:
    error(std::string message, int exit_code)
        : std::runtime_error(std::move(message)), exit_code_(exit_code) {}

    int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

// Malformed or unreadable input (files, JSON, argument values).
class parse_error : public error {
public:
    explicit parse_error(const std::string& message) : error(message, 2) {}
};

// A requested computation exceeds a configured size guard.
class guard_error : public error {
public:
    explicit guard_error(const std::string& message) : error(message, 3) {}
};

// A numeric result could not be certified to the required tolerance.
class precision_error : public error {
public:
    explicit precision_error(const std::string& message) : error(message, 4) {}
};

// Structurally valid input that violates a mathematical requirement
// (non-primitive vanishing cycle, incompatible signature, ...).
class invariant_error : public error {
public:
    explicit invariant_error(const std::string& message) : error(message, 5) {}
};

// A bug: an internal consistency check failed.  Never expected to throw.
class internal_error : public error {
public:
    explicit internal_error(const std::string& message) : error(message, 70) {}
};

} // namespace lefschetz
