#pragma once

#include <stdexcept>
#include <string>

namespace typea {

enum class ErrorKind {
    InputDomain,            // caller passed values outside the operation's domain
    DegenerateRicci,        // an operation needing rank-2 Ricci got rank < 2
    NumericFailure,         // an iterative procedure ran out of budget
    Misuse,                 // documented precondition violated
    InternalInconsistency,  // a cross-check between two computations failed
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace typea
