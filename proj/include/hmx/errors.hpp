#pragma once

#include <stdexcept>
#include <string>

namespace hmx {

// Bad mathematical input (division by zero, out-of-domain point, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed user input (parse errors, inconsistent tuples).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Element rejected because it does not lie in the stabiliser order.
struct NotInOrderError : DomainError {
    explicit NotInOrderError(const std::string& what) : DomainError(what) {}
};

// Evaluation of a rational function at a zero of its denominator.
struct PoleError : DomainError {
    explicit PoleError(const std::string& what) : DomainError(what) {}
};

// Series truncation failed to reach the requested accuracy.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A certificate failed its symbolic re-verification.
struct CertificateError : std::runtime_error {
    explicit CertificateError(const std::string& what) : std::runtime_error(what) {}
};

// Exact computation would exceed the configured size cap.
struct SizeError : std::runtime_error {
    explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hmx
